#pragma once

#include <vector>

#include "fieldmapper/common.hpp"
#include "fieldmapper/field.hpp"
#include "fieldmapper/hough.hpp"

namespace fieldmapper {

struct ExecutedPoint {
    Point location;
    double value = 0.0;
    bool inside_true_region = false;
};

/// One agent's measurement schedule: what has been executed, in order, and
/// what remains planned.
struct MeasurementPlan {
    std::vector<ExecutedPoint> executed;
    std::vector<Point> future;

    std::size_t total() const { return executed.size() + future.size(); }
};

constexpr int kDefaultMaxAttempts = 20;

struct RelocationResult {
    Point location;
    bool exposed = false;  // fallback exhausted, point left in place
};

/// Shifts a planned point out of the detected circles by +-(r + margin)
/// along a random axis, retrying from the original point; falls back to
/// rejection sampling, and finally leaves the point with the exposed flag.
RelocationResult relocate_point(const Point& p, const CircleSet& circles, const DomainBox& box,
                                double margin, int max_attempts, Rng& rng);

struct ReplanStats {
    int moved = 0;
    int exposed = 0;
};

/// Passes every future location through relocate_point against the current
/// circle set. Executed locations are never touched.
ReplanStats replan(MeasurementPlan& plan, const CircleSet& circles, const DomainBox& box,
                   double margin, int max_attempts, Rng& rng);

/// Uniform random plan over the box, consuming 2 * count draws from rng.
std::vector<Point> random_plan(const DomainBox& box, int count, Rng& rng);

}  // namespace fieldmapper
