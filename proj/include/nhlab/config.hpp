#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "nhlab/propagate.hpp"

namespace nhlab {

/// One run configuration. Sections "params", "grid", "window", "controls"
/// mirror the corresponding structs field by field; "seed" and "sweep" are
/// top-level. Every key is optional; unknown keys are rejected.
struct RunConfig {
  PhysParams params;
  GridSpec grid;
  TimeWindow window;
  prop::PropagationControls controls{1e-3, 0.05, 10, 50};
  std::uint64_t seed = 20240601;
  /// Sweep axes: "section.field" or bare field name -> values.
  std::map<std::string, std::vector<double>> sweep;
};

/// Throws Error(ConfigParse) on structural problems.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& cfg);

/// Applies one numeric override such as "n" or "controls.dt".
void apply_override(RunConfig& cfg, const std::string& key, double value);

}  // namespace nhlab
