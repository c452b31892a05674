#include "fieldmapper/swarm.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace fieldmapper {

void MissionConfig::validate() const {
    if (n_agents < 1) throw ConfigError("MissionConfig: n_agents must be >= 1");
    if (n_trn < 1) throw ConfigError("MissionConfig: n_trn must be >= 1");
    if (grid_side < 2) throw ConfigError("MissionConfig: grid_side must be >= 2");
    if (comm_radius < 0.0) throw ConfigError("MissionConfig: comm_radius must be >= 0");
    if (jitter < 0.0) throw ConfigError("MissionConfig: jitter must be >= 0");
    kernel_params.validate();
    hough.validate();
}

std::vector<Encounter> encounters(const std::vector<Point>& positions, double comm_radius,
                                  int step) {
    std::vector<Encounter> out;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        for (std::size_t j = i + 1; j < positions.size(); ++j) {
            if (distance(positions[i], positions[j]) <= comm_radius) {
                out.push_back({step, static_cast<int>(i), static_cast<int>(j)});
            }
        }
    }
    return out;
}

void pairwise_average(WorkingEstimate& a, WorkingEstimate& b) {
    if (a.mean.size() != b.mean.size() || a.variance.size() != b.variance.size()) {
        throw std::logic_error("pairwise_average: estimate dimension mismatch");
    }
    a.mean = 0.5 * (a.mean + b.mean);
    a.variance = 0.5 * (a.variance + b.variance);
    b.mean = a.mean;
    b.variance = a.variance;
}

Mission::Mission(const MissionConfig& cfg, const FieldSpec& field)
    : cfg_(cfg), field_(field) {
    cfg_.validate();
    grid_ = make_test_grid(field.box, cfg.grid_side);
    truth_.resize(grid_.size());
    for (int i = 0; i < grid_.size(); ++i) {
        truth_(i) = eval_field(field_, grid_.points[i]);
    }
    margin_ = cfg_.effective_margin(grid_.spacing());

    agents_.reserve(static_cast<std::size_t>(cfg_.n_agents));
    records_.resize(static_cast<std::size_t>(cfg_.n_agents));
    for (int id = 0; id < cfg_.n_agents; ++id) {
        AgentState agent{id, IncrementalGp(grid_, cfg_.kernel_params, cfg_.jitter),
                         {},  {},  {},  {},  make_agent_rng(cfg_.seed, static_cast<std::uint64_t>(id)),
                         0,   {},  std::numeric_limits<double>::infinity()};
        agent.plan.future = random_plan(field_.box, cfg_.n_trn, agent.rng);
        agent.initial_plan = agent.plan.future;
        agent.nearest_sq.assign(static_cast<std::size_t>(grid_.size()),
                                std::numeric_limits<double>::infinity());
        agents_.push_back(std::move(agent));
    }
}

void Mission::step() {
    if (step_ >= cfg_.n_trn) {
        throw std::logic_error("Mission::step: mission already complete");
    }
    ++step_;

    std::vector<Point> positions(agents_.size());
    for (auto& agent : agents_) {
        const Point pos = agent.plan.future.front();
        agent.plan.future.erase(agent.plan.future.begin());
        positions[static_cast<std::size_t>(agent.id)] = pos;

        const double truth_value = eval_field(field_, pos);
        double measured = truth_value;
        if (field_.noise_sigma > 0.0) {
            std::normal_distribution<double> noise(0.0, field_.noise_sigma);
            measured += noise(agent.rng);
        }
        agent.plan.executed.push_back(
            {pos, measured, in_true_high_intensity(field_, pos, cfg_.g_thresh)});

        // spread-diagnostic bookkeeping before the GP update
        for (int i = 0; i < grid_.size(); ++i) {
            const double d2 = squared_distance(grid_.points[i], pos);
            auto& slot = agent.nearest_sq[static_cast<std::size_t>(i)];
            if (d2 < slot) slot = d2;
        }
        for (std::size_t k = 0; k + 1 < agent.plan.executed.size(); ++k) {
            agent.min_pair_sq = std::min(
                agent.min_pair_sq, squared_distance(agent.plan.executed[k].location, pos));
        }

        try {
            agent.gp.add_measurement(pos, measured);
        } catch (const SingularModelError& e) {
            std::ostringstream oss;
            oss << "step " << step_ << ", agent " << agent.id << ": " << e.what();
            throw SingularModelError(oss.str());
        }

        const Posterior local = agent.gp.posterior();
        agent.working.mean = local.mean;
        agent.working.variance = local.cov_diag;

        const BinaryMap map = binarize(agent.working.mean, grid_.side_count, cfg_.g_thresh);
        agent.circles = detect_circles(map, cfg_.hough, grid_);

        if (cfg_.avoidance_enabled) {
            const ReplanStats stats =
                replan(agent.plan, agent.circles, field_.box, margin_, cfg_.max_attempts, agent.rng);
            agent.exposure_flags += stats.exposed;
        }
    }

    const auto meets = encounters(positions, cfg_.comm_radius, step_);
    for (const auto& e : meets) {
        pairwise_average(agents_[static_cast<std::size_t>(e.agent_i)].working,
                         agents_[static_cast<std::size_t>(e.agent_j)].working);
        encounter_log_.push_back(e);
    }

    for (auto& agent : agents_) {
        AgentStepRecord rec;
        rec.l2_error = (agent.working.mean - truth_).norm();
        double worst = 0.0;
        for (const double d2 : agent.nearest_sq) worst = std::max(worst, d2);
        rec.fill_distance = std::sqrt(worst);
        rec.mesh_ratio = agent.plan.executed.size() >= 2
                             ? rec.fill_distance / (0.5 * std::sqrt(agent.min_pair_sq))
                             : std::numeric_limits<double>::quiet_NaN();
        rec.n_circles = static_cast<int>(agent.circles.size());
        const ExposureMetrics exp = exposure_metrics(agent.plan.executed, cfg_.g_thresh);
        rec.cum_intensity_inside = exp.total_intensity_inside;
        rec.cum_count_inside = exp.count_inside;
        records_[static_cast<std::size_t>(agent.id)].push_back(rec);
    }
}

MissionResult Mission::finish() {
    MissionResult result;
    result.encounter_log = encounter_log_;
    result.agents.reserve(agents_.size());
    for (auto& agent : agents_) {
        AgentResult ar;
        ar.id = agent.id;
        ar.steps = records_[static_cast<std::size_t>(agent.id)];
        ar.plan = agent.plan;
        ar.initial_plan = agent.initial_plan;
        ar.final_mean = agent.working.mean;
        ar.final_variance = agent.working.variance;
        ar.final_circles = agent.circles;
        ar.totals = exposure_metrics(agent.plan.executed, cfg_.g_thresh);
        ar.exposure_flags = agent.exposure_flags;
        result.agents.push_back(std::move(ar));
    }
    return result;
}

MissionResult run_mission(const MissionConfig& cfg, const FieldSpec& field) {
    Mission mission(cfg, field);
    for (int t = 0; t < cfg.n_trn; ++t) {
        mission.step();
    }
    return mission.finish();
}

}  // namespace fieldmapper
