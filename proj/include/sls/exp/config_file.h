#pragma once

#include <filesystem>
#include <string>

#include "sls/exp/scenario.h"

namespace sls::exp {

// YAML scenario files. Unknown keys, wrong types and out-of-range values
// raise ConfigError with the offending key path. The result is validated.
ScenarioConfig ParseScenarioYaml(const std::string& text);
ScenarioConfig LoadScenarioFile(const std::filesystem::path& path);

// Round-trips through ParseScenarioYaml.
std::string DumpScenarioYaml(const ScenarioConfig& cfg);

}  // namespace sls::exp
