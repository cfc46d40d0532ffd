// SPDX-License-Identifier: Apache-2.0
//! \file config.hpp
//! Scenario configuration: a strict TOML-subset reader plus validated
//! conversion into typed run parameters. Unknown keys are rejected so that a
//! typo in a config file never silently falls back to a default.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kinetica/kernels.hpp"
#include "kinetica/quadrature.hpp"
#include "kinetica/types.hpp"

namespace kinetica {

/// One parsed TOML value. Arrays are homogeneous; nested tables are flattened
/// into dotted keys ("kernel.sigma0") by the parser.
struct TomlValue {
    enum class Kind { String, Integer, Float, Boolean, Array } kind = Kind::String;
    std::string string_value;
    std::int64_t integer_value = 0;
    double float_value = 0.0;
    bool boolean_value = false;
    std::vector<TomlValue> array_value;

    double as_double() const;          ///< accepts Integer or Float
    std::int64_t as_integer() const;   ///< Integer only
    bool as_boolean() const;
    const std::string& as_string() const;
    std::vector<double> as_double_array() const;
};

/// Parses the TOML subset used by scenario configs: `key = value` lines,
/// `[table]` / `[table.sub]` headers (flattened to dotted keys), strings,
/// integers, floats (incl. inf/nan forms), booleans, flat arrays, comments.
/// Throws ConfigError with a line number on any malformed input.
std::map<std::string, TomlValue> parse_toml(const std::string& text);
std::map<std::string, TomlValue> parse_toml_file(const std::string& path);

/// Everything a scenario run needs, with defaults matching the documented
/// CLI behaviour. `consumed` tracking lets validation reject unknown keys.
struct ScenarioConfig {
    std::string scenario;

    ModelSpec model{};
    KernelSpec kernel{};
    QuadratureSpec quadrature{};

    // Initial condition selection (homogeneous runs and fixtures).
    std::string initial = "bimodal";     ///< bimodal | equilibrium | fixture:<n>
    double perturbation = 0.0;           ///< linear-limit scenarios

    // Relaxation / slab runs.
    double t_end = 5.0;
    double dt = 0.05;
    int grid_nodes = 24;
    double grid_halfwidth = 8.0;
    int space_nodes = 64;
    double slab_length = 6.283185307179586;
    bool collisions = true;

    // Sweeps.
    std::vector<double> epsilon_list{0.8, 0.4, 0.2, 0.1};
    std::vector<double> c_list{5.0, 10.0, 20.0, 40.0};
    std::vector<double> hbar_list{0.4, 0.2, 0.1, 0.05};

    std::uint64_t seed = 0x1905C0FFEEULL;
    int threads = 0;                     ///< 0 = library default
    std::string out_dir = ".";

    /// Raw config text (for hashing into output metadata).
    std::string source_text;

    void validate() const;               ///< throws ConfigError on bad values
};

/// Builds a ScenarioConfig from a parsed TOML map. Unknown keys throw
/// ConfigError listing the offending key. `scenario` comes from the CLI.
ScenarioConfig make_scenario_config(const std::string& scenario,
                                    const std::map<std::string, TomlValue>& values);

ScenarioConfig load_scenario_config(const std::string& scenario, const std::string& path);

/// Default configuration for a scenario when no --config is given.
ScenarioConfig default_scenario_config(const std::string& scenario);

/// FNV-1a 64-bit hash of the config source text, hex-encoded; embedded in
/// every output file so results can be traced back to their inputs.
std::string config_hash(const std::string& text);

}  // namespace kinetica
