// SPDX-License-Identifier: Apache-2.0
//! \file scenarios.hpp
//! Named end-to-end runs behind the CLI. Each scenario takes a validated
//! config, performs its computation, writes CSV/JSON artifacts to the output
//! directory, and reports pass/fail plus a short human-readable message.
#pragma once

#include <string>
#include <vector>

#include "kinetica/config.hpp"

namespace kinetica {

struct ScenarioResult {
    std::string scenario;
    bool pass = false;
    std::string message;                   ///< one-line outcome
    std::vector<std::string> artifacts;    ///< files written (absolute or out-relative)
};

/// All recognized scenario names, in documentation order.
const std::vector<std::string>& scenario_names();

bool is_scenario(const std::string& name);

/// Dispatches to the named scenario. Throws ConfigError for unknown names;
/// computational failures are reported via `pass = false`, not exceptions.
ScenarioResult run_scenario(const ScenarioConfig& config);

}  // namespace kinetica
