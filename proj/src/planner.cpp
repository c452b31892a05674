#include "fieldmapper/planner.hpp"

#include <cstddef>

namespace fieldmapper {

namespace {

constexpr int kRejectionDraws = 1000;

const Circle* containing_circle(const Point& p, const CircleSet& circles, double margin) {
    for (const auto& c : circles.circles) {
        if (point_in_circle(p, c, margin)) return &c;
    }
    return nullptr;
}

}  // namespace

RelocationResult relocate_point(const Point& p, const CircleSet& circles, const DomainBox& box,
                                double margin, int max_attempts, Rng& rng) {
    if (margin < 0.0) {
        throw ConfigError("relocate_point: margin must be non-negative");
    }
    if (containing_circle(p, circles, margin) == nullptr) {
        return {p, false};
    }
    std::uniform_int_distribution<int> coin(0, 1);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        // shift always starts from the original planned point; the 1e-9 pad
        // keeps the candidate strictly clear of the inflated boundary under
        // floating-point rounding
        const Circle* c = containing_circle(p, circles, margin);
        const double shift = (c->r + margin + 1e-9) * (coin(rng) ? 1.0 : -1.0);
        Point candidate = p;
        if (coin(rng)) {
            candidate.x += shift;
        } else {
            candidate.y += shift;
        }
        candidate = box.clamp(candidate);
        if (containing_circle(candidate, circles, margin) == nullptr) {
            return {candidate, false};
        }
    }
    std::uniform_real_distribution<double> ux(box.x_min, box.x_max);
    std::uniform_real_distribution<double> uy(box.y_min, box.y_max);
    for (int draw = 0; draw < kRejectionDraws; ++draw) {
        const Point candidate{ux(rng), uy(rng)};
        if (containing_circle(candidate, circles, margin) == nullptr) {
            return {candidate, false};
        }
    }
    return {p, true};  // circles cover the box for all practical purposes
}

ReplanStats replan(MeasurementPlan& plan, const CircleSet& circles, const DomainBox& box,
                   double margin, int max_attempts, Rng& rng) {
    ReplanStats stats;
    for (auto& p : plan.future) {
        const RelocationResult result = relocate_point(p, circles, box, margin, max_attempts, rng);
        if (result.exposed) {
            ++stats.exposed;
        } else if (result.location.x != p.x || result.location.y != p.y) {
            ++stats.moved;
        }
        p = result.location;
    }
    return stats;
}

std::vector<Point> random_plan(const DomainBox& box, int count, Rng& rng) {
    std::uniform_real_distribution<double> ux(box.x_min, box.x_max);
    std::uniform_real_distribution<double> uy(box.y_min, box.y_max);
    std::vector<Point> plan;
    plan.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double x = ux(rng);
        const double y = uy(rng);
        plan.push_back({x, y});
    }
    return plan;
}

}  // namespace fieldmapper
