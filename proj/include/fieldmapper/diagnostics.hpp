#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fieldmapper/common.hpp"
#include "fieldmapper/field.hpp"
#include "fieldmapper/planner.hpp"

namespace fieldmapper {

struct SpreadDiagnostics {
    double fill_distance = 0.0;
    double separation_radius = 0.0;
    double mesh_ratio = 0.0;
};

/// Grid approximation of sup_x inf_y ||x - y|| over the domain; accurate to
/// within spacing/sqrt(2).
double fill_distance(const std::vector<Point>& train_locations, const TestGrid& grid);

/// Half the minimum pairwise distance between training locations.
double separation_radius(const std::vector<Point>& train_locations);

double mesh_ratio(double fill, double separation);

/// Euclidean norm of (mean - truth) over the grid.
double l2_error(const Eigen::VectorXd& mean, const Eigen::VectorXd& truth);

struct ExposureMetrics {
    double total_intensity_inside = 0.0;
    int count_inside = 0;
};

/// Sum and count of measured values above g_thresh; under noiseless
/// measurement this matches true high-intensity membership.
ExposureMetrics exposure_metrics(const std::vector<ExecutedPoint>& executed, double g_thresh);

}  // namespace fieldmapper
