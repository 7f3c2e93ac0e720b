#pragma once

#include <string>

#include "tschls/sim.hpp"

namespace tschls {

inline constexpr int kScenarioSchemaVersion = 1;

/// Parse a scenario document (JSON). The schema is strict: the `version`
/// field is mandatory, unknown keys are rejected by name, and missing keys
/// fall back to the built-in defaults.
Scenario parse_scenario(const std::string& json_text);

/// Read and parse a scenario file.
Scenario load_scenario(const std::string& path);

}  // namespace tschls
