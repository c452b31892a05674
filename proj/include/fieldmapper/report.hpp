#pragma once

#include <cstdint>
#include <string>

#include "fieldmapper/swarm.hpp"

namespace fieldmapper {

// CSV output uses '.' decimal and 17 significant digits so reruns are
// byte-comparable.
std::string format_real(double v);

void write_metrics_csv(const std::string& path, const MissionResult& result);
void write_circles_csv(const std::string& path, const MissionResult& result);
void write_plan_csv(const std::string& path, const AgentResult& agent);

/// Final mean / binary map / truth heatmaps for one mission.
void write_heatmaps(const std::string& out_dir, const MissionResult& result,
                    const MissionConfig& cfg, const FieldSpec& field);

/// FNV-1a over the formatted coordinates of every agent's initial plan.
std::uint64_t initial_plan_hash(const MissionResult& result);

void write_mission_outputs(const std::string& out_dir, const MissionResult& result,
                           const MissionConfig& cfg, const FieldSpec& field);

}  // namespace fieldmapper
