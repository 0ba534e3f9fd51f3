#pragma once

#include <string>

#include "ionshape/scenario.hpp"

namespace ionshape {

// Strict JSON config ingestion: unknown keys anywhere are rejected, every
// value is range-checked before any computation runs. Absent keys keep the
// reference-scenario defaults.
ScenarioConfig scenario_from_json_text(const std::string& text);
ScenarioConfig scenario_from_json_file(const std::string& path);

std::string scenario_to_json_text(const ScenarioConfig& config);

}  // namespace ionshape
