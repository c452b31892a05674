#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "fieldmapper/common.hpp"
#include "fieldmapper/diagnostics.hpp"
#include "fieldmapper/field.hpp"
#include "fieldmapper/gp.hpp"
#include "fieldmapper/hough.hpp"
#include "fieldmapper/planner.hpp"

namespace fieldmapper {

struct MissionConfig {
    int n_agents = 4;
    int n_trn = 100;
    int grid_side = 100;
    KernelParams kernel_params;
    double g_thresh = 1.0;
    double comm_radius = 0.2;
    HoughConfig hough;
    double margin = -1.0;  // negative = one grid cell
    int max_attempts = kDefaultMaxAttempts;
    double jitter = kDefaultJitter;
    std::uint64_t seed = 0;
    bool avoidance_enabled = true;

    void validate() const;
    double effective_margin(double grid_spacing) const {
        return margin >= 0.0 ? margin : grid_spacing;
    }
};

struct Encounter {
    int step = 0;
    int agent_i = 0;  // i < j
    int agent_j = 0;
};

/// All unordered agent pairs within comm_radius, in lexicographic order.
std::vector<Encounter> encounters(const std::vector<Point>& positions, double comm_radius,
                                  int step);

struct WorkingEstimate {
    Eigen::VectorXd mean;
    Eigen::VectorXd variance;
};

/// Entry-wise averaging of two agents' estimates; both sides leave with the
/// same fused values.
void pairwise_average(WorkingEstimate& a, WorkingEstimate& b);

struct AgentStepRecord {
    double l2_error = 0.0;
    double fill_distance = 0.0;
    double mesh_ratio = 0.0;  // NaN while fewer than two measurements exist
    int n_circles = 0;
    double cum_intensity_inside = 0.0;
    int cum_count_inside = 0;
};

struct AgentResult {
    int id = 0;
    std::vector<AgentStepRecord> steps;
    MeasurementPlan plan;
    std::vector<Point> initial_plan;
    Eigen::VectorXd final_mean;
    Eigen::VectorXd final_variance;
    CircleSet final_circles;
    ExposureMetrics totals;
    int exposure_flags = 0;
};

struct MissionResult {
    std::vector<AgentResult> agents;
    std::vector<Encounter> encounter_log;
};

struct AgentState {
    int id = 0;
    IncrementalGp gp;
    MeasurementPlan plan;
    std::vector<Point> initial_plan;
    WorkingEstimate working;
    CircleSet circles;
    Rng rng;
    int exposure_flags = 0;
    // incremental spread-diagnostic state
    std::vector<double> nearest_sq;  // per grid point, squared distance to closest sample
    double min_pair_sq = 0.0;
};

class Mission {
public:
    Mission(const MissionConfig& cfg, const FieldSpec& field);

    /// Executes one Algorithm-1 time step for all agents.
    void step();

    int current_step() const { return step_; }
    const std::vector<AgentState>& agents() const { return agents_; }

    MissionResult finish();

private:
    MissionConfig cfg_;
    FieldSpec field_;
    TestGrid grid_;
    Eigen::VectorXd truth_;
    double margin_ = 0.0;
    int step_ = 0;
    std::vector<AgentState> agents_;
    std::vector<Encounter> encounter_log_;
    std::vector<std::vector<AgentStepRecord>> records_;
};

MissionResult run_mission(const MissionConfig& cfg, const FieldSpec& field);

}  // namespace fieldmapper
