#include "fieldmapper/diagnostics.hpp"

#include <cmath>
#include <limits>

namespace fieldmapper {

double fill_distance(const std::vector<Point>& train_locations, const TestGrid& grid) {
    if (train_locations.empty()) {
        throw UndefinedDiagnosticError("fill_distance: empty training set");
    }
    double worst = 0.0;
    for (const auto& gp : grid.points) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& tp : train_locations) {
            nearest = std::min(nearest, squared_distance(gp, tp));
        }
        worst = std::max(worst, nearest);
    }
    return std::sqrt(worst);
}

double separation_radius(const std::vector<Point>& train_locations) {
    if (train_locations.size() < 2) {
        throw UndefinedDiagnosticError("separation_radius: needs at least two points");
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < train_locations.size(); ++i) {
        for (std::size_t j = i + 1; j < train_locations.size(); ++j) {
            best = std::min(best, squared_distance(train_locations[i], train_locations[j]));
        }
    }
    return 0.5 * std::sqrt(best);
}

double mesh_ratio(double fill, double separation) {
    if (separation <= 0.0) {
        throw UndefinedDiagnosticError("mesh_ratio: separation radius is zero");
    }
    return fill / separation;
}

double l2_error(const Eigen::VectorXd& mean, const Eigen::VectorXd& truth) {
    if (mean.size() != truth.size()) {
        throw ConfigError("l2_error: vector length mismatch");
    }
    return (mean - truth).norm();
}

ExposureMetrics exposure_metrics(const std::vector<ExecutedPoint>& executed, double g_thresh) {
    ExposureMetrics m;
    for (const auto& pt : executed) {
        if (pt.value > g_thresh) {
            m.total_intensity_inside += pt.value;
            ++m.count_inside;
        }
    }
    return m;
}

}  // namespace fieldmapper
