#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fieldmapper/config.hpp"
#include "fieldmapper/report.hpp"
#include "fieldmapper/swarm.hpp"

namespace fm = fieldmapper;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

int thread_cap() {
    if (const char* env = std::getenv("FIELDMAPPER_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> agents;
    std::optional<int> steps;
    bool no_avoidance = false;
};

void apply_overrides(fm::RunSetup& setup, const RunOverrides& ov) {
    if (ov.seed) setup.mission.seed = *ov.seed;
    if (ov.agents) setup.mission.n_agents = *ov.agents;
    if (ov.steps) setup.mission.n_trn = *ov.steps;
    if (ov.no_avoidance) setup.mission.avoidance_enabled = false;
    setup.mission.validate();
}

int cmd_run(const std::string& config_path, const RunOverrides& ov, const std::string& out_dir) {
    fm::RunSetup setup = fm::load_run_config(config_path);
    apply_overrides(setup, ov);

    const auto start = std::chrono::steady_clock::now();
    const fm::MissionResult result = fm::run_mission(setup.mission, setup.field);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    std::filesystem::create_directories(out_dir);
    fm::write_mission_outputs(out_dir, result, setup.mission, setup.field);
    fm::write_manifest(out_dir + "/manifest.json", setup, elapsed.count(),
                       fm::initial_plan_hash(result));
    std::cout << "mission complete: " << setup.mission.n_agents << " agents, "
              << setup.mission.n_trn << " steps, outputs in " << out_dir << "\n";
    return kExitOk;
}

struct CompareRow {
    std::uint64_t seed = 0;
    std::uint64_t plan_hash = 0;
    double base_l2 = 0.0, gpht_l2 = 0.0;
    double base_intensity = 0.0, gpht_intensity = 0.0;
    int base_count = 0, gpht_count = 0;
};

CompareRow run_pair(fm::RunSetup setup, std::uint64_t seed) {
    setup.mission.seed = seed;
    CompareRow row;
    row.seed = seed;

    setup.mission.avoidance_enabled = false;
    const fm::MissionResult base = fm::run_mission(setup.mission, setup.field);
    setup.mission.avoidance_enabled = true;
    const fm::MissionResult gpht = fm::run_mission(setup.mission, setup.field);

    row.plan_hash = fm::initial_plan_hash(base);
    if (row.plan_hash != fm::initial_plan_hash(gpht)) {
        throw std::logic_error("compare: arms diverged on initial plans");
    }
    auto summarize = [](const fm::MissionResult& r, double& l2, double& intensity, int& count) {
        for (const auto& a : r.agents) {
            l2 += a.steps.back().l2_error;
            intensity += a.totals.total_intensity_inside;
            count += a.totals.count_inside;
        }
        l2 /= static_cast<double>(r.agents.size());
    };
    summarize(base, row.base_l2, row.base_intensity, row.base_count);
    summarize(gpht, row.gpht_l2, row.gpht_intensity, row.gpht_count);
    return row;
}

int cmd_compare(const std::string& config_path, std::uint64_t base_seed, int n_seeds,
                const std::string& out_dir) {
    if (n_seeds < 1) {
        throw fm::ConfigError("compare: --seeds must be >= 1");
    }
    fm::RunSetup setup = fm::load_run_config(config_path);
    std::filesystem::create_directories(out_dir);

    std::vector<CompareRow> rows(static_cast<std::size_t>(n_seeds));
    const int cap = thread_cap();
    for (int begin = 0; begin < n_seeds; begin += cap) {
        std::vector<std::future<CompareRow>> batch;
        const int end = std::min(begin + cap, n_seeds);
        for (int i = begin; i < end; ++i) {
            batch.push_back(std::async(std::launch::async, run_pair, setup, base_seed + i));
        }
        for (int i = begin; i < end; ++i) {
            rows[static_cast<std::size_t>(i)] = batch[static_cast<std::size_t>(i - begin)].get();
        }
    }

    std::ofstream out(out_dir + "/compare.csv");
    if (!out) {
        throw fm::ConfigError("cannot open output file " + out_dir + "/compare.csv");
    }
    out << "seed,initial_plan_hash,baseline_final_l2,gpht_final_l2,"
           "baseline_intensity_inside,gpht_intensity_inside,"
           "baseline_count_inside,gpht_count_inside\n";
    double sum_base_l2 = 0, sum_gpht_l2 = 0, sum_base_int = 0, sum_gpht_int = 0;
    long sum_base_cnt = 0, sum_gpht_cnt = 0;
    for (const auto& r : rows) {
        out << r.seed << ',' << r.plan_hash << ',' << fm::format_real(r.base_l2) << ','
            << fm::format_real(r.gpht_l2) << ',' << fm::format_real(r.base_intensity) << ','
            << fm::format_real(r.gpht_intensity) << ',' << r.base_count << ',' << r.gpht_count
            << '\n';
        sum_base_l2 += r.base_l2;
        sum_gpht_l2 += r.gpht_l2;
        sum_base_int += r.base_intensity;
        sum_gpht_int += r.gpht_intensity;
        sum_base_cnt += r.base_count;
        sum_gpht_cnt += r.gpht_count;
    }
    const double n = static_cast<double>(n_seeds);
    auto reduction = [](double base, double gpht) {
        return base > 0.0 ? 100.0 * (base - gpht) / base : 0.0;
    };
    out << "summary,mean," << fm::format_real(sum_base_l2 / n) << ','
        << fm::format_real(sum_gpht_l2 / n) << ',' << fm::format_real(sum_base_int / n) << ','
        << fm::format_real(sum_gpht_int / n) << ','
        << fm::format_real(static_cast<double>(sum_base_cnt) / n) << ','
        << fm::format_real(static_cast<double>(sum_gpht_cnt) / n) << '\n';
    out << "summary,reduction_pct,,," << fm::format_real(reduction(sum_base_int, sum_gpht_int))
        << ",," << fm::format_real(reduction(double(sum_base_cnt), double(sum_gpht_cnt)))
        << ",\n";
    std::cout << "compare complete: " << n_seeds << " paired seeds, intensity reduction "
              << reduction(sum_base_int, sum_gpht_int) << "%, count reduction "
              << reduction(double(sum_base_cnt), double(sum_gpht_cnt)) << "%\n";
    return kExitOk;
}

int cmd_hough_test(const std::string& image_path, double r_min, double r_max,
                   double sensitivity) {
    const fm::BinaryMap map = fm::read_pgm(image_path);
    fm::HoughConfig cfg;
    cfg.r_min = r_min;
    cfg.r_max = r_max;
    cfg.sensitivity = sensitivity;
    cfg.validate();
    const fm::TestGrid grid = fm::make_test_grid({0.0, 1.0, 0.0, 1.0}, map.side_count);
    const fm::CircleSet circles = fm::detect_circles(map, cfg, grid);
    std::cout << "cx,cy,r,score\n";
    for (std::size_t i = 0; i < circles.size(); ++i) {
        const auto& c = circles.circles[i];
        std::cout << fm::format_real(c.cx) << ',' << fm::format_real(c.cy) << ','
                  << fm::format_real(c.r) << ',' << fm::format_real(circles.scores[i]) << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fieldmapper: multi-agent GP field mapping with Hough-based hazard avoidance"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    RunOverrides ov;
    std::uint64_t seed_flag = 0;
    int agents_flag = 0;
    int steps_flag = 0;

    auto* run = app.add_subcommand("run", "run one mission and write CSV/PGM artifacts");
    run->add_option("--config", config_path, "JSON config path")->required();
    run->add_option("--seed", seed_flag, "master seed override");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--agents", agents_flag, "agent count override");
    run->add_option("--steps", steps_flag, "measurement count override");
    run->add_flag("--no-avoidance", ov.no_avoidance, "disable relocation (baseline GP)");

    std::uint64_t compare_seed = 0;
    int n_seeds = 10;
    auto* compare = app.add_subcommand("compare", "paired baseline vs GP-HT study");
    compare->add_option("--config", config_path, "JSON config path")->required();
    compare->add_option("--seed", compare_seed, "first seed of the paired sweep");
    compare->add_option("--seeds", n_seeds, "number of paired seeds");
    compare->add_option("--out", out_dir, "output directory");

    std::string image_path;
    double r_min = 0.05, r_max = 0.15, sensitivity = 1.0;
    auto* hough = app.add_subcommand("hough-test", "detect circles in a PGM image");
    hough->add_option("image", image_path, "P2 PGM path")->required();
    hough->add_option("--r-min", r_min, "minimum radius (domain units)");
    hough->add_option("--r-max", r_max, "maximum radius (domain units)");
    hough->add_option("--sensitivity", sensitivity, "detection sensitivity in [0,1]");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (run->count("--seed")) ov.seed = seed_flag;
            if (run->count("--agents")) ov.agents = agents_flag;
            if (run->count("--steps")) ov.steps = steps_flag;
            return cmd_run(config_path, ov, out_dir);
        }
        if (compare->parsed()) {
            return cmd_compare(config_path, compare_seed, n_seeds, out_dir);
        }
        return cmd_hough_test(image_path, r_min, r_max, sensitivity);
    } catch (const fm::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
