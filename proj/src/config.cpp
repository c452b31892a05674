#include "fieldmapper/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fieldmapper/report.hpp"

namespace fieldmapper {

namespace {

using nlohmann::json;

double require_double(const json& j, const char* section, const char* key) {
    if (!j.contains(key)) {
        std::ostringstream oss;
        oss << "config: missing required field " << section << "." << key;
        throw ConfigError(oss.str());
    }
    return j.at(key).get<double>();
}

}  // namespace

RunSetup parse_run_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    RunSetup setup;
    if (j.contains("field")) {
        setup.field = FieldSpec::from_json(j["field"].dump());
    } else {
        setup.field = FieldSpec::paper_sinusoid();
    }
    auto& m = setup.mission;
    m.n_agents = j.value("agents", 4);
    m.n_trn = j.value("steps", 100);
    m.grid_side = j.value("grid_side", 100);
    m.kernel_params.alpha = j.value("alpha", 1.0);
    m.kernel_params.beta = j.value("beta", 0.1);
    m.g_thresh = j.value("g_thresh", 1.0);
    m.comm_radius = j.value("comm_radius", 0.2);
    if (!j.contains("hough")) {
        throw ConfigError("config: missing required section hough");
    }
    const auto& h = j["hough"];
    m.hough.r_min = require_double(h, "hough", "r_min");
    m.hough.r_max = require_double(h, "hough", "r_max");
    m.hough.sensitivity = h.value("sensitivity", 1.0);
    m.hough.radius_step = h.value("radius_step", 0.0);
    m.margin = j.value("margin", -1.0);
    m.max_attempts = j.value("max_attempts", kDefaultMaxAttempts);
    m.jitter = j.value("jitter", kDefaultJitter);
    m.seed = j.value("seed", std::uint64_t{0});
    m.avoidance_enabled = j.value("avoidance", true);
    m.validate();
    return setup;
}

RunSetup load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

namespace {

json setup_to_json(const RunSetup& setup) {
    const auto& m = setup.mission;
    json j;
    j["field"] = json::parse(setup.field.to_json());
    j["agents"] = m.n_agents;
    j["steps"] = m.n_trn;
    j["grid_side"] = m.grid_side;
    j["alpha"] = m.kernel_params.alpha;
    j["beta"] = m.kernel_params.beta;
    j["g_thresh"] = m.g_thresh;
    j["comm_radius"] = m.comm_radius;
    j["hough"] = {{"r_min", m.hough.r_min},
                  {"r_max", m.hough.r_max},
                  {"sensitivity", m.hough.sensitivity},
                  {"radius_step", m.hough.radius_step}};
    j["margin"] = m.margin;
    j["max_attempts"] = m.max_attempts;
    j["jitter"] = m.jitter;
    j["seed"] = m.seed;
    j["avoidance"] = m.avoidance_enabled;
    return j;
}

}  // namespace

std::string run_config_to_json(const RunSetup& setup) {
    return setup_to_json(setup).dump(2);
}

void write_manifest(const std::string& path, const RunSetup& setup, double duration_seconds,
                    std::uint64_t plan_hash) {
    json j = setup_to_json(setup);
    j["tool_version"] = kToolVersion;
    j["duration_seconds"] = duration_seconds;
    j["initial_plan_hash"] = plan_hash;
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open output file " + path);
    }
    out << j.dump(2) << "\n";
}

}  // namespace fieldmapper
