#include "fieldmapper/gp.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace fieldmapper {

double kernel(const Point& p, const Point& q, const KernelParams& params) {
    params.validate();
    const double r2 = squared_distance(p, q);
    return params.alpha * params.alpha * std::exp(-r2 / (2.0 * params.beta * params.beta));
}

TrainSet append_measurement(TrainSet train, const Point& p, double y) {
    train.append(p, y);
    return train;
}

namespace {

std::string describe_closest_pair(const TrainSet& train) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < train.size(); ++i) {
        for (std::size_t j = i + 1; j < train.size(); ++j) {
            const double d2 = squared_distance(train.locations[i], train.locations[j]);
            if (d2 < best) {
                best = d2;
                bi = i;
                bj = j;
            }
        }
    }
    std::ostringstream oss;
    oss << "closest training pair: index " << bi << " (" << train.locations[bi].x << ", "
        << train.locations[bi].y << ") and index " << bj << " (" << train.locations[bj].x
        << ", " << train.locations[bj].y << "), distance " << std::sqrt(best);
    return oss.str();
}

Eigen::MatrixXd gram_matrix(const TrainSet& train, const KernelParams& params) {
    const auto t = static_cast<Eigen::Index>(train.size());
    Eigen::MatrixXd k(t, t);
    for (Eigen::Index i = 0; i < t; ++i) {
        k(i, i) = params.alpha * params.alpha;
        for (Eigen::Index j = i + 1; j < t; ++j) {
            k(i, j) = k(j, i) = kernel(train.locations[i], train.locations[j], params);
        }
    }
    return k;
}

Eigen::VectorXd kernel_against_grid(const Point& p, const TestGrid& grid,
                                    const KernelParams& params) {
    const double a2 = params.alpha * params.alpha;
    const double inv2b2 = 1.0 / (2.0 * params.beta * params.beta);
    Eigen::VectorXd out(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        out(i) = a2 * std::exp(-squared_distance(p, grid.points[i]) * inv2b2);
    }
    return out;
}

}  // namespace

KernelMatrices build_kernel_matrices(const TrainSet& train, const TestGrid& grid,
                                     const KernelParams& params) {
    params.validate();
    if (train.size() == 0) {
        throw ConfigError("build_kernel_matrices: empty train set");
    }
    KernelMatrices m;
    m.trn_trn = gram_matrix(train, params);
    m.test_trn.resize(grid.size(), static_cast<Eigen::Index>(train.size()));
    for (std::size_t j = 0; j < train.size(); ++j) {
        m.test_trn.col(static_cast<Eigen::Index>(j)) =
            kernel_against_grid(train.locations[j], grid, params);
    }
    m.test_test_diag = Eigen::VectorXd::Constant(grid.size(), params.alpha * params.alpha);
    return m;
}

Posterior posterior_at(const TrainSet& train, const std::vector<Point>& query,
                       const KernelParams& params, double jitter) {
    params.validate();
    if (jitter < 0.0) {
        throw ConfigError("posterior: jitter must be non-negative");
    }
    const double a2 = params.alpha * params.alpha;
    const auto n_query = static_cast<Eigen::Index>(query.size());
    if (train.size() == 0) {
        // no data: prior mean 0, prior variance alpha^2
        Posterior prior;
        prior.mean = Eigen::VectorXd::Zero(n_query);
        prior.cov_diag = Eigen::VectorXd::Constant(n_query, a2);
        return prior;
    }
    Eigen::MatrixXd gram = gram_matrix(train, params);
    gram.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) {
        throw SingularModelError("posterior: Gram matrix not positive definite after jitter; " +
                                 describe_closest_pair(train));
    }
    Eigen::MatrixXd query_trn(n_query, static_cast<Eigen::Index>(train.size()));
    for (std::size_t j = 0; j < train.size(); ++j) {
        for (Eigen::Index i = 0; i < n_query; ++i) {
            query_trn(i, static_cast<Eigen::Index>(j)) =
                kernel(query[static_cast<std::size_t>(i)], train.locations[j], params);
        }
    }
    const Eigen::MatrixXd lower = llt.matrixL();
    const Eigen::VectorXd y =
        Eigen::Map<const Eigen::VectorXd>(train.values.data(), train.values.size());
    // V = L^{-1} K_trn_query, so variance = a2 - colwise ||V||^2
    Eigen::MatrixXd projected = lower.triangularView<Eigen::Lower>().solve(query_trn.transpose());
    Eigen::VectorXd weights = lower.triangularView<Eigen::Lower>().solve(y);

    Posterior post;
    post.mean = projected.transpose() * weights;
    post.cov_diag = (a2 - projected.colwise().squaredNorm().array()).matrix();
    return post;
}

Posterior posterior(const TrainSet& train, const TestGrid& grid, const KernelParams& params,
                    double jitter) {
    return posterior_at(train, grid.points, params, jitter);
}

IncrementalGp::IncrementalGp(const TestGrid& grid, const KernelParams& params, double jitter)
    : grid_(grid), params_(params), jitter_(jitter) {
    params_.validate();
    if (jitter < 0.0) {
        throw ConfigError("IncrementalGp: jitter must be non-negative");
    }
}

void IncrementalGp::add_measurement(const Point& p, double y) {
    const auto t = static_cast<Eigen::Index>(train_.size());
    const double a2 = params_.alpha * params_.alpha;

    Eigen::VectorXd cross(t);
    for (Eigen::Index i = 0; i < t; ++i) {
        cross(i) = kernel(train_.locations[static_cast<std::size_t>(i)], p, params_);
    }

    Eigen::VectorXd l(t);
    if (t > 0) {
        l = chol_.topLeftCorner(t, t).triangularView<Eigen::Lower>().solve(cross);
    }
    const double pivot2 = a2 + jitter_ - l.squaredNorm();
    if (!(pivot2 > 0.0)) {
        TrainSet extended = train_;
        extended.append(p, y);
        throw SingularModelError(
            "IncrementalGp: rank extension lost positive definiteness; " +
            describe_closest_pair(extended));
    }
    const double pivot = std::sqrt(pivot2);

    chol_.conservativeResize(t + 1, t + 1);
    chol_.row(t).head(t) = l.transpose();
    chol_.col(t).head(t).setZero();
    chol_(t, t) = pivot;

    Eigen::VectorXd k_grid = kernel_against_grid(p, grid_, params_);
    projected_.conservativeResize(t + 1, grid_.size());
    if (t > 0) {
        projected_.row(t) = (k_grid.transpose() - l.transpose() * projected_.topRows(t)) / pivot;
    } else {
        projected_.row(0) = k_grid.transpose() / pivot;
    }

    train_.append(p, y);
}

Posterior IncrementalGp::posterior() const {
    const double a2 = params_.alpha * params_.alpha;
    if (train_.size() == 0) {
        Posterior prior;
        prior.mean = Eigen::VectorXd::Zero(grid_.size());
        prior.cov_diag = Eigen::VectorXd::Constant(grid_.size(), a2);
        return prior;
    }
    const Eigen::VectorXd y =
        Eigen::Map<const Eigen::VectorXd>(train_.values.data(), train_.values.size());
    const Eigen::VectorXd weights = chol_.triangularView<Eigen::Lower>().solve(y);
    Posterior post;
    post.mean = projected_.transpose() * weights;
    post.cov_diag = (a2 - projected_.colwise().squaredNorm().array()).matrix();
    return post;
}

Eigen::MatrixXd IncrementalGp::full_covariance() const {
    Eigen::MatrixXd k_test(grid_.size(), grid_.size());
    for (int i = 0; i < grid_.size(); ++i) {
        k_test(i, i) = params_.alpha * params_.alpha;
        for (int j = i + 1; j < grid_.size(); ++j) {
            k_test(i, j) = k_test(j, i) = kernel(grid_.points[i], grid_.points[j], params_);
        }
    }
    if (train_.size() == 0) {
        return k_test;
    }
    return k_test - projected_.transpose() * projected_;
}

}  // namespace fieldmapper
