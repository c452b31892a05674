#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fieldmapper/common.hpp"
#include "fieldmapper/field.hpp"

namespace fieldmapper {

struct KernelParams {
    double alpha = 1.0;  // output scale
    double beta = 0.1;   // length scale

    void validate() const {
        if (!(alpha > 0.0) || !(beta > 0.0)) {
            throw ConfigError("KernelParams: alpha and beta must be strictly positive");
        }
    }
};

/// Squared-exponential covariance: alpha^2 * exp(-||p-q||^2 / (2 beta^2)).
double kernel(const Point& p, const Point& q, const KernelParams& params);

struct TrainSet {
    std::vector<Point> locations;
    std::vector<double> values;

    std::size_t size() const { return locations.size(); }
    void append(const Point& p, double y) {
        locations.push_back(p);
        values.push_back(y);
    }
};

TrainSet append_measurement(TrainSet train, const Point& p, double y);

struct KernelMatrices {
    Eigen::MatrixXd trn_trn;        // t x t
    Eigen::MatrixXd test_trn;       // G^2 x t
    Eigen::VectorXd test_test_diag; // length G^2, all alpha^2 for this kernel
};

KernelMatrices build_kernel_matrices(const TrainSet& train, const TestGrid& grid,
                                     const KernelParams& params);

struct Posterior {
    Eigen::VectorXd mean;      // length G^2
    Eigen::VectorXd cov_diag;  // predictive variances

    // Full covariance is materialized only on request (see full_covariance
    // on IncrementalGp); missions consume only mean and diag.
};

constexpr double kDefaultJitter = 1e-8;

/// From-scratch posterior over the test grid. With an empty train set the
/// prior is returned (zero mean, alpha^2 variance).
Posterior posterior(const TrainSet& train, const TestGrid& grid, const KernelParams& params,
                    double jitter = kDefaultJitter);

/// Same posterior evaluated at arbitrary query points.
Posterior posterior_at(const TrainSet& train, const std::vector<Point>& query,
                       const KernelParams& params, double jitter = kDefaultJitter);

/// Rank-extending GP that adds one measurement at a time in O(t^2) factor
/// work plus O(t G^2) for the grid projections.
class IncrementalGp {
public:
    IncrementalGp(const TestGrid& grid, const KernelParams& params,
                  double jitter = kDefaultJitter);

    void add_measurement(const Point& p, double y);

    std::size_t train_size() const { return train_.size(); }
    const TrainSet& train() const { return train_; }

    Posterior posterior() const;

    /// Full G^2 x G^2 predictive covariance; intended for small grids.
    Eigen::MatrixXd full_covariance() const;

private:
    TestGrid grid_;
    KernelParams params_;
    double jitter_;
    TrainSet train_;
    Eigen::MatrixXd chol_;       // lower-triangular factor of K_trn + jitter I
    Eigen::MatrixXd projected_;  // t x G^2, L^{-1} K_trn_test
};

}  // namespace fieldmapper
