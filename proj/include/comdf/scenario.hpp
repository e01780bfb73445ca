#pragma once

#include <string>

#include "comdf/sim.hpp"

namespace comdf {

/// Parses a scenario document. The format is strict JSON with sections
/// plant / sensors / graph / design / run; unknown keys anywhere are
/// rejected and every matrix is dimension-checked during the load. See the
/// README for the schema and an example.
ScenarioConfig parse_scenario_json(const std::string& text);

/// Reads and parses a scenario file.
ScenarioConfig load_scenario_file(const std::string& path);

/// Canonical JSON for a config (explicit matrices, presets expanded).
/// Writing and re-parsing yields an equal config.
std::string scenario_to_json(const ScenarioConfig& cfg);

/// Structural equality, used by the round-trip contract.
bool scenario_equal(const ScenarioConfig& a, const ScenarioConfig& b);

}  // namespace comdf
