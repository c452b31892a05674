#pragma once

#include <string>

#include "fieldmapper/field.hpp"
#include "fieldmapper/swarm.hpp"

namespace fieldmapper {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunSetup {
    MissionConfig mission;
    FieldSpec field;
};

/// Parses a run configuration. Required keys: hough.r_min, hough.r_max.
/// Everything else defaults and is echoed into the manifest. ConfigError
/// messages name the offending key.
RunSetup load_run_config(const std::string& path);
RunSetup parse_run_config(const std::string& json_text);

std::string run_config_to_json(const RunSetup& setup);

/// Manifest: the resolved config plus provenance; itself a valid config.
void write_manifest(const std::string& path, const RunSetup& setup, double duration_seconds,
                    std::uint64_t plan_hash);

}  // namespace fieldmapper
