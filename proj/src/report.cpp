#include "fieldmapper/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace fieldmapper {

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open output file " + path);
    }
    return out;
}

}  // namespace

void write_metrics_csv(const std::string& path, const MissionResult& result) {
    auto out = open_out(path);
    out << "step,agent,l2_error,fill_distance,mesh_ratio,n_circles,"
           "cum_intensity_inside,cum_count_inside\n";
    if (result.agents.empty()) return;
    const std::size_t n_steps = result.agents.front().steps.size();
    for (std::size_t t = 0; t < n_steps; ++t) {
        for (const auto& agent : result.agents) {
            const auto& rec = agent.steps[t];
            out << (t + 1) << ',' << agent.id << ',' << format_real(rec.l2_error) << ','
                << format_real(rec.fill_distance) << ',' << format_real(rec.mesh_ratio) << ','
                << rec.n_circles << ',' << format_real(rec.cum_intensity_inside) << ','
                << rec.cum_count_inside << '\n';
        }
    }
}

void write_circles_csv(const std::string& path, const MissionResult& result) {
    auto out = open_out(path);
    out << "agent,index,cx,cy,r,score\n";
    for (const auto& agent : result.agents) {
        for (std::size_t i = 0; i < agent.final_circles.size(); ++i) {
            const auto& c = agent.final_circles.circles[i];
            out << agent.id << ',' << i << ',' << format_real(c.cx) << ',' << format_real(c.cy)
                << ',' << format_real(c.r) << ',' << format_real(agent.final_circles.scores[i])
                << '\n';
        }
    }
}

void write_plan_csv(const std::string& path, const AgentResult& agent) {
    auto out = open_out(path);
    out << "step,x,y,executed,inside_true_region\n";
    std::size_t step = 1;
    for (const auto& pt : agent.plan.executed) {
        out << step++ << ',' << format_real(pt.location.x) << ',' << format_real(pt.location.y)
            << ",1," << (pt.inside_true_region ? 1 : 0) << '\n';
    }
    for (const auto& p : agent.plan.future) {
        out << step++ << ',' << format_real(p.x) << ',' << format_real(p.y) << ",0,0\n";
    }
}

void write_heatmaps(const std::string& out_dir, const MissionResult& result,
                    const MissionConfig& cfg, const FieldSpec& field) {
    const TestGrid grid = make_test_grid(field.box, cfg.grid_side);
    Eigen::VectorXd truth(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        truth(i) = eval_field(field, grid.points[i]);
    }
    write_pgm_gray(out_dir + "/truth.pgm", truth, cfg.grid_side);
    write_pgm(out_dir + "/truth_binary.pgm",
              binarize(truth, cfg.grid_side, cfg.g_thresh), 255);
    for (const auto& agent : result.agents) {
        const std::string tag = "_agent" + std::to_string(agent.id);
        write_pgm_gray(out_dir + "/mean" + tag + ".pgm", agent.final_mean, cfg.grid_side);
        write_pgm(out_dir + "/binary" + tag + ".pgm",
                  binarize(agent.final_mean, cfg.grid_side, cfg.g_thresh), 255);
    }
}

std::uint64_t initial_plan_hash(const MissionResult& result) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto mix = [&](const std::string& s) {
        for (const unsigned char c : s) {
            hash ^= c;
            hash *= 0x100000001b3ULL;
        }
    };
    for (const auto& agent : result.agents) {
        for (const auto& p : agent.initial_plan) {
            mix(format_real(p.x));
            mix(format_real(p.y));
        }
    }
    return hash;
}

void write_mission_outputs(const std::string& out_dir, const MissionResult& result,
                           const MissionConfig& cfg, const FieldSpec& field) {
    std::filesystem::create_directories(out_dir);
    write_metrics_csv(out_dir + "/metrics.csv", result);
    write_circles_csv(out_dir + "/circles.csv", result);
    for (const auto& agent : result.agents) {
        write_plan_csv(out_dir + "/plan_" + std::to_string(agent.id) + ".csv", agent);
    }
    write_heatmaps(out_dir, result, cfg, field);
}

}  // namespace fieldmapper
