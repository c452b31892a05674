#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "fieldmapper/report.hpp"
#include "fieldmapper/swarm.hpp"

using namespace fieldmapper;

namespace {

MissionConfig small_config() {
    MissionConfig cfg;
    cfg.n_agents = 2;
    cfg.n_trn = 12;
    cfg.grid_side = 40;
    cfg.kernel_params = {1.0, 0.1};
    cfg.g_thresh = 1.0;
    cfg.comm_radius = 0.2;
    cfg.hough.r_min = 0.06;
    cfg.hough.r_max = 0.15;
    cfg.hough.sensitivity = 1.0;
    cfg.seed = 17;
    return cfg;
}

bool same_result(const MissionResult& a, const MissionResult& b) {
    if (a.agents.size() != b.agents.size()) return false;
    if (a.encounter_log.size() != b.encounter_log.size()) return false;
    for (std::size_t i = 0; i < a.agents.size(); ++i) {
        const auto& x = a.agents[i];
        const auto& y = b.agents[i];
        if (x.final_mean != y.final_mean) return false;
        if (x.final_variance != y.final_variance) return false;
        if (x.steps.size() != y.steps.size()) return false;
        for (std::size_t t = 0; t < x.steps.size(); ++t) {
            if (x.steps[t].l2_error != y.steps[t].l2_error) return false;
            if (x.steps[t].cum_count_inside != y.steps[t].cum_count_inside) return false;
        }
        if (x.plan.executed.size() != y.plan.executed.size()) return false;
        for (std::size_t t = 0; t < x.plan.executed.size(); ++t) {
            if (x.plan.executed[t].location.x != y.plan.executed[t].location.x) return false;
            if (x.plan.executed[t].value != y.plan.executed[t].value) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("encounters") {
    SUBCASE("zero radius with distinct positions is empty") {
        CHECK(encounters({{0.1, 0.1}, {0.2, 0.2}}, 0.0, 1).empty());
    }
    SUBCASE("distance exactly R_c is included") {
        const auto e = encounters({{0.0, 0.0}, {0.3, 0.0}}, 0.3, 4);
        REQUIRE(e.size() == 1);
        CHECK(e[0].step == 4);
        CHECK(e[0].agent_i == 0);
        CHECK(e[0].agent_j == 1);
    }
    SUBCASE("three mutually close agents pair lexicographically") {
        const auto e = encounters({{0.1, 0.1}, {0.11, 0.1}, {0.1, 0.11}}, 0.5, 1);
        REQUIRE(e.size() == 3);
        CHECK((e[0].agent_i == 0 && e[0].agent_j == 1));
        CHECK((e[1].agent_i == 0 && e[1].agent_j == 2));
        CHECK((e[2].agent_i == 1 && e[2].agent_j == 2));
    }
}

TEST_CASE("pairwise averaging") {
    SUBCASE("entry-wise mean lands on both sides") {
        WorkingEstimate a, b;
        a.mean = Eigen::Vector2d(1, 3);
        b.mean = Eigen::Vector2d(3, 1);
        a.variance = Eigen::Vector2d(1, 1);
        b.variance = Eigen::Vector2d(0.5, 0.5);
        pairwise_average(a, b);
        CHECK(a.mean == Eigen::Vector2d(2, 2));
        CHECK(b.mean == a.mean);
        CHECK(a.variance == Eigen::Vector2d(0.75, 0.75));
        CHECK(b.variance == a.variance);
    }
    SUBCASE("identical estimates are a fixed point") {
        WorkingEstimate a, b;
        a.mean = b.mean = Eigen::Vector3d(1, 2, 3);
        a.variance = b.variance = Eigen::Vector3d(0.1, 0.2, 0.3);
        pairwise_average(a, b);
        CHECK(a.mean == Eigen::Vector3d(1, 2, 3));
    }
    SUBCASE("sequential chain (1,2) then (2,3)") {
        WorkingEstimate a, b, c;
        a.mean = Eigen::VectorXd::Constant(1, 1.0);
        b.mean = Eigen::VectorXd::Constant(1, 5.0);
        c.mean = Eigen::VectorXd::Constant(1, 9.0);
        a.variance = b.variance = c.variance = Eigen::VectorXd::Constant(1, 1.0);
        pairwise_average(a, b);  // a = b = 3
        pairwise_average(b, c);  // b = c = 6
        CHECK(a.mean(0) == doctest::Approx(3.0));
        CHECK(b.mean(0) == doctest::Approx(6.0));
        CHECK(c.mean(0) == doctest::Approx(6.0));
    }
    SUBCASE("dimension mismatch is an internal error") {
        WorkingEstimate a, b;
        a.mean = Eigen::Vector2d(1, 2);
        b.mean = Eigen::Vector3d(1, 2, 3);
        a.variance = Eigen::Vector2d(1, 1);
        b.variance = Eigen::Vector3d(1, 1, 1);
        CHECK_THROWS_AS(pairwise_average(a, b), std::logic_error);
    }
}

TEST_CASE("single-step single-agent mission runs") {
    MissionConfig cfg = small_config();
    cfg.n_agents = 1;
    cfg.n_trn = 1;
    const MissionResult result = run_mission(cfg, FieldSpec::paper_sinusoid());
    REQUIRE(result.agents.size() == 1);
    CHECK(result.agents[0].steps.size() == 1);
    CHECK(result.encounter_log.empty());
    CHECK(result.agents[0].plan.executed.size() == 1);
    CHECK(result.agents[0].plan.future.empty());
    CHECK(std::isnan(result.agents[0].steps[0].mesh_ratio));
}

TEST_CASE("same seed gives identical missions") {
    const MissionConfig cfg = small_config();
    const FieldSpec field = FieldSpec::paper_sinusoid();
    const MissionResult a = run_mission(cfg, field);
    const MissionResult b = run_mission(cfg, field);
    CHECK(same_result(a, b));

    // and the serialized metrics are byte-identical
    write_metrics_csv("metrics_a.csv", a);
    write_metrics_csv("metrics_b.csv", b);
    std::ifstream fa("metrics_a.csv"), fb("metrics_b.csv");
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
}

TEST_CASE("baseline with zero comm radius is invariant to extra agents") {
    MissionConfig cfg = small_config();
    cfg.avoidance_enabled = false;
    cfg.comm_radius = 0.0;
    const FieldSpec field = FieldSpec::paper_sinusoid();

    cfg.n_agents = 1;
    const MissionResult solo = run_mission(cfg, field);
    cfg.n_agents = 3;
    const MissionResult group = run_mission(cfg, field);

    const auto& a = solo.agents[0];
    const auto& b = group.agents[0];
    CHECK(a.final_mean == b.final_mean);
    for (std::size_t t = 0; t < a.steps.size(); ++t) {
        CHECK(a.steps[t].l2_error == b.steps[t].l2_error);
    }
    for (std::size_t t = 0; t < a.plan.executed.size(); ++t) {
        CHECK(a.plan.executed[t].location.x == b.plan.executed[t].location.x);
        CHECK(a.plan.executed[t].location.y == b.plan.executed[t].location.y);
    }
}

TEST_CASE("baseline runs never modify their plans") {
    MissionConfig cfg = small_config();
    cfg.avoidance_enabled = false;
    const MissionResult result = run_mission(cfg, FieldSpec::paper_sinusoid());
    for (const auto& agent : result.agents) {
        REQUIRE(agent.plan.executed.size() == agent.initial_plan.size());
        for (std::size_t t = 0; t < agent.initial_plan.size(); ++t) {
            CHECK(agent.plan.executed[t].location.x == agent.initial_plan[t].x);
            CHECK(agent.plan.executed[t].location.y == agent.initial_plan[t].y);
        }
    }
}

TEST_CASE("averaging leaves encountered agents with identical estimates") {
    MissionConfig cfg = small_config();
    cfg.comm_radius = 2.0;  // every step is an encounter
    cfg.n_agents = 2;
    cfg.n_trn = 3;
    Mission mission(cfg, FieldSpec::paper_sinusoid());
    for (int t = 0; t < cfg.n_trn; ++t) {
        mission.step();
        const auto& agents = mission.agents();
        CHECK(agents[0].working.mean == agents[1].working.mean);
        CHECK(agents[0].working.variance == agents[1].working.variance);
    }
    const MissionResult result = mission.finish();
    CHECK(result.encounter_log.size() == 3);
}

TEST_CASE("logged measurements equal the field at the executed locations") {
    const MissionConfig cfg = small_config();
    const FieldSpec field = FieldSpec::paper_sinusoid();
    const MissionResult result = run_mission(cfg, field);
    for (const auto& agent : result.agents) {
        for (const auto& pt : agent.plan.executed) {
            CHECK(pt.value == eval_field(field, pt.location));
            CHECK(pt.inside_true_region == (pt.value > cfg.g_thresh));
        }
        // exposure accounting is consistent with the per-step log
        const auto& last = agent.steps.back();
        CHECK(last.cum_count_inside == agent.totals.count_inside);
        CHECK(last.cum_intensity_inside == doctest::Approx(agent.totals.total_intensity_inside));
        double manual = 0.0;
        int count = 0;
        for (const auto& pt : agent.plan.executed) {
            if (pt.value > cfg.g_thresh) {
                manual += pt.value;
                ++count;
            }
        }
        CHECK(agent.totals.count_inside == count);
        CHECK(agent.totals.total_intensity_inside == doctest::Approx(manual));
    }
}

TEST_CASE("config validation rejects bad missions") {
    MissionConfig cfg = small_config();
    cfg.n_agents = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = small_config();
    cfg.comm_radius = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
