#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcmab/config.hpp"

namespace bcmab {

// Regime presets parameterized by horizon and seed. Throws ConfigError for
// unknown names.
ScenarioConfig make_preset(const std::string& name, int64_t horizon, uint64_t seed);

std::vector<std::string> preset_names();

// Enforces the participant-structure assumptions of the named regime on a
// config (e.g. theorem1 caps attackers at floor(M/3), theorem3 needs
// M_A^1 < M_H - 1 and M_A^2 < M/2 - 1). Throws ConfigError on violation.
void check_regime_assumptions(const std::string& name, const ScenarioConfig& cfg);

}  // namespace bcmab
