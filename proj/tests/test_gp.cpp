#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "fieldmapper/gp.hpp"
#include "test_util.hpp"

using namespace fieldmapper;
namespace ft = fieldmapper::testing;

TEST_CASE("squared-exponential kernel scalar values") {
    CHECK(kernel({0.3, 0.4}, {0.3, 0.4}, {1.0, 0.1}) == doctest::Approx(1.0));
    CHECK(kernel({0.3, 0.4}, {0.3, 0.4}, {2.0, 0.1}) == doctest::Approx(4.0));
    // distance 0.1 with beta 0.1 -> exp(-1/2)
    CHECK(kernel({0.0, 0.0}, {0.1, 0.0}, {1.0, 0.1}) == doctest::Approx(std::exp(-0.5)));
    CHECK(kernel({0.2, 0.7}, {0.6, 0.1}, {1.0, 0.1}) ==
          doctest::Approx(kernel({0.6, 0.1}, {0.2, 0.7}, {1.0, 0.1})));
    CHECK_THROWS_AS(kernel({0, 0}, {1, 1}, {0.0, 0.1}), ConfigError);
    CHECK_THROWS_AS(kernel({0, 0}, {1, 1}, {1.0, -0.1}), ConfigError);
}

TEST_CASE("kernel matrices") {
    const TestGrid grid = make_test_grid({0, 1, 0, 1}, 5);
    const KernelParams params{1.0, 0.1};

    SUBCASE("single training point") {
        TrainSet train;
        train.append({0.5, 0.5}, 1.0);
        const KernelMatrices m = build_kernel_matrices(train, grid, params);
        REQUIRE(m.trn_trn.rows() == 1);
        CHECK(m.trn_trn(0, 0) == doctest::Approx(1.0));
        CHECK(m.test_trn.rows() == 25);
        CHECK(m.test_test_diag.size() == 25);
        CHECK(m.test_test_diag(7) == doctest::Approx(1.0));
    }
    SUBCASE("two points at distance 0.1") {
        TrainSet train;
        train.append({0.4, 0.5}, 1.0);
        train.append({0.5, 0.5}, 2.0);
        const KernelMatrices m = build_kernel_matrices(train, grid, params);
        CHECK(m.trn_trn(0, 1) == doctest::Approx(std::exp(-0.5)));
        CHECK(m.trn_trn(1, 0) == doctest::Approx(m.trn_trn(0, 1)));
    }
    SUBCASE("empty train set rejected") {
        CHECK_THROWS_AS(build_kernel_matrices(TrainSet{}, grid, params), ConfigError);
    }
}

TEST_CASE("posterior interpolates noiseless data") {
    const TestGrid grid = make_test_grid({0, 1, 0, 1}, 11);
    const KernelParams params{1.0, 0.1};
    TrainSet train;
    train.append(grid.at(5, 5), 5.0);  // a grid point
    const Posterior post = posterior(train, grid, params, 1e-8);
    const int idx = grid.index(5, 5);
    CHECK(post.mean(idx) == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(post.cov_diag(idx) <= 1e-8 + 1e-6);
    // prior recovered far from the data
    CHECK(post.cov_diag(grid.index(0, 0)) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(post.mean(grid.index(0, 0)) == doctest::Approx(0.0).epsilon(1e-3));
}

TEST_CASE("empty train set returns the prior") {
    const TestGrid grid = make_test_grid({0, 1, 0, 1}, 4);
    const Posterior post = posterior(TrainSet{}, grid, {2.0, 0.1});
    CHECK(post.mean.isZero());
    CHECK(post.cov_diag.minCoeff() == doctest::Approx(4.0));
}

TEST_CASE("duplicate points without jitter are singular") {
    const TestGrid grid = make_test_grid({0, 1, 0, 1}, 4);
    TrainSet train;
    train.append({0.5, 0.5}, 1.0);
    train.append({0.5, 0.5}, 1.0);
    CHECK_THROWS_AS(posterior(train, grid, {1.0, 0.1}, 0.0), SingularModelError);
    // with jitter the same data factorizes
    CHECK_NOTHROW(posterior(train, grid, {1.0, 0.1}, 1e-8));
}

TEST_CASE("append_measurement preserves order and content") {
    TrainSet train;
    train = append_measurement(train, {0.1, 0.2}, 3.0);
    REQUIRE(train.size() == 1);
    train = append_measurement(train, {0.3, 0.4}, -1.0);
    REQUIRE(train.size() == 2);
    CHECK(train.locations[0].x == 0.1);
    CHECK(train.values[0] == 3.0);
    CHECK(train.values[1] == -1.0);

    const TestGrid grid = make_test_grid({0, 1, 0, 1}, 11);
    TrainSet on_grid;
    on_grid = append_measurement(on_grid, grid.at(3, 7), 1.5);
    const Posterior post = posterior(on_grid, grid, {1.0, 0.1});
    CHECK(post.mean(grid.index(3, 7)) == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("interpolation holds over many random training sets") {
    std::mt19937_64 rng(7);
    const KernelParams params{1.0, 0.1};
    const TestGrid grid = make_test_grid({0, 1, 0, 1}, 12);
    std::uniform_int_distribution<int> cell(0, 11);
    std::uniform_real_distribution<double> value(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        TrainSet train;
        std::vector<int> used;
        while (train.size() < 8) {
            const int j = cell(rng), k = cell(rng);
            const int idx = grid.index(j, k);
            if (std::find(used.begin(), used.end(), idx) != used.end()) continue;
            used.push_back(idx);
            train.append(grid.at(j, k), value(rng));
        }
        const Posterior post = posterior(train, grid, params, 1e-8);
        for (std::size_t i = 0; i < train.size(); ++i) {
            CHECK(std::abs(post.mean(used[i]) - train.values[i]) <= 1e-6);
        }
    }
}

TEST_CASE("full covariance is symmetric PSD with bounded variances") {
    std::mt19937_64 rng(19);
    const TestGrid grid = make_test_grid({0, 1, 0, 1}, 12);
    IncrementalGp gp(grid, {1.0, 0.1});
    std::uniform_real_distribution<double> value(-2.0, 2.0);
    for (int i = 0; i < 15; ++i) {
        gp.add_measurement(ft::random_point(rng), value(rng));
    }
    const Eigen::MatrixXd cov = gp.full_covariance();
    CHECK((cov - cov.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8);
    const Posterior post = gp.posterior();
    CHECK(post.cov_diag.maxCoeff() <= 1.0 + 1e-9);
}

TEST_CASE("adding a measurement never inflates predictive variance") {
    std::mt19937_64 rng(23);
    const TestGrid grid = make_test_grid({0, 1, 0, 1}, 10);
    IncrementalGp gp(grid, {1.0, 0.15});
    std::uniform_real_distribution<double> value(-2.0, 2.0);
    Eigen::VectorXd prev = gp.posterior().cov_diag;
    for (int i = 0; i < 12; ++i) {
        gp.add_measurement(ft::random_point(rng), value(rng));
        const Eigen::VectorXd cur = gp.posterior().cov_diag;
        CHECK((cur - prev).maxCoeff() <= 1e-9);
        prev = cur;
    }
}

TEST_CASE("incremental posterior matches the from-scratch recompute") {
    std::mt19937_64 rng(31);
    const TestGrid grid = make_test_grid({0, 1, 0, 1}, 15);
    const KernelParams params{1.0, 0.1};
    IncrementalGp gp(grid, params, 1e-8);
    TrainSet train;
    std::uniform_real_distribution<double> value(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        const Point p = ft::random_point(rng);
        const double y = value(rng);
        gp.add_measurement(p, y);
        train.append(p, y);
        const Posterior incr = gp.posterior();
        const Posterior full = posterior(train, grid, params, 1e-8);
        CHECK((incr.mean - full.mean).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK((incr.cov_diag - full.cov_diag).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("t=0 to t=1 rank extension equals the fresh posterior") {
    const TestGrid grid = make_test_grid({0, 1, 0, 1}, 8);
    const KernelParams params{1.0, 0.1};
    IncrementalGp gp(grid, params, 1e-8);
    gp.add_measurement({0.3, 0.6}, 1.25);
    TrainSet train;
    train.append({0.3, 0.6}, 1.25);
    const Posterior incr = gp.posterior();
    const Posterior full = posterior(train, grid, params, 1e-8);
    CHECK((incr.mean - full.mean).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((incr.cov_diag - full.cov_diag).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("duplicate injection with jitter survives and shrinks variance") {
    const TestGrid grid = make_test_grid({0, 1, 0, 1}, 11);
    const KernelParams params{1.0, 0.1};
    IncrementalGp gp(grid, params, 1e-8);
    const Point p = grid.at(5, 5);
    gp.add_measurement(p, 1.0);
    const double var_one = gp.posterior().cov_diag(grid.index(5, 5));
    CHECK_NOTHROW(gp.add_measurement(p, 1.0));
    const double var_two = gp.posterior().cov_diag(grid.index(5, 5));
    CHECK(var_two <= var_one + 1e-12);
    CHECK(var_two == doctest::Approx(var_one / 2.0).epsilon(0.2));
    // still matches the from-scratch recompute
    TrainSet train;
    train.append(p, 1.0);
    train.append(p, 1.0);
    const Posterior full = posterior(train, grid, params, 1e-8);
    CHECK((gp.posterior().mean - full.mean).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("Gram matrices of distinct random points are PD after tiny jitter") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 5; ++trial) {
        TrainSet train;
        while (train.size() < 50) {
            train.append(ft::random_point(rng), 0.0);
        }
        Eigen::MatrixXd gram = build_kernel_matrices(
                                   train, make_test_grid({0, 1, 0, 1}, 2), {1.0, 0.1})
                                   .trn_trn;
        gram.diagonal().array() += 1e-10;
        Eigen::LLT<Eigen::MatrixXd> llt(gram);
        CHECK(llt.info() == Eigen::Success);
    }
}
