// SPDX-License-Identifier: Apache-2.0
// Configuration and output plumbing: the TOML-subset reader, typed config
// construction with unknown-key rejection, config hashing, CSV/JSON
// formatting, and the scenario registry.
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>

#include "doctest.h"
#include "kinetica/config.hpp"
#include "kinetica/io.hpp"
#include "kinetica/scenarios.hpp"

using namespace kinetica;

TEST_CASE("TOML subset: tables, scalars, arrays, comments") {
    const std::string text =
        "# run parameters\n"
        "t_end = 2.5\n"
        "seed = 42   # trailing comment\n"
        "initial = \"equilibrium\"\n"
        "collisions = false\n"
        "epsilon_list = [0.8, 0.4, 0.2]\n"
        "\n"
        "[model]\n"
        "statistics = \"bose-einstein\"\n"
        "dim = 3\n"
        "\n"
        "[kernel]\n"
        "sigma0 = 1.5\n";
    const auto values = parse_toml(text);
    CHECK(values.at("t_end").as_double() == doctest::Approx(2.5));
    CHECK(values.at("seed").as_integer() == 42);
    CHECK(values.at("initial").as_string() == "equilibrium");
    CHECK(values.at("collisions").as_boolean() == false);
    const auto eps = values.at("epsilon_list").as_double_array();
    REQUIRE(eps.size() == 3);
    CHECK(eps[1] == doctest::Approx(0.4));
    CHECK(values.at("model.statistics").as_string() == "bose-einstein");
    CHECK(values.at("model.dim").as_integer() == 3);
    CHECK(values.at("kernel.sigma0").as_double() == doctest::Approx(1.5));
}

TEST_CASE("TOML subset: malformed input is rejected with a line number") {
    CHECK_THROWS_AS(parse_toml("key 5\n"), ConfigError);
    CHECK_THROWS_AS(parse_toml("a = \"unterminated\n"), ConfigError);
    CHECK_THROWS_AS(parse_toml("a = [1, 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_toml("a = 1\na = 2\n"), ConfigError);  // duplicate
    CHECK_THROWS_AS(parse_toml("[table\n"), ConfigError);
    CHECK_THROWS_AS(parse_toml("a = zzz\n"), ConfigError);
    // Type mismatches surface when the value is read.
    const auto v = parse_toml("a = 1.5\n");
    CHECK_THROWS_AS(v.at("a").as_integer(), ConfigError);
    CHECK_THROWS_AS(v.at("a").as_string(), ConfigError);
}

TEST_CASE("scenario config: defaults, overrides, and dimension rebuild") {
    std::map<std::string, TomlValue> empty;
    const ScenarioConfig def = make_scenario_config("conservation", empty);
    CHECK(def.model.dim == 2);
    CHECK(def.model.statistics == Statistics::MaxwellBoltzmann);
    CHECK(def.t_end == doctest::Approx(5.0));
    CHECK(def.quadrature.box_nodes == 24);
    CHECK(def.seed == 0x1905C0FFEEULL);

    const auto values = parse_toml(
        "[model]\n"
        "dynamics = \"relativistic\"\n"
        "statistics = \"fermi-dirac\"\n"
        "dim = 3\n"
        "c = 2.0\n"
        "[kernel]\n"
        "epsilon = 0.5\n"
        "[quadrature]\n"
        "box_nodes = 12\n"
        "seed_unused = 1\n");
    CHECK_THROWS_WITH_AS(make_scenario_config("conservation", values),
                         doctest::Contains("quadrature.seed_unused"), ConfigError);

    const auto good = parse_toml(
        "[model]\n"
        "dynamics = \"relativistic\"\n"
        "statistics = \"fermi-dirac\"\n"
        "dim = 3\n"
        "c = 2.0\n"
        "[kernel]\n"
        "epsilon = 0.5\n"
        "[quadrature]\n"
        "box_nodes = 12\n");
    const ScenarioConfig cfg = make_scenario_config("conservation", good);
    CHECK(cfg.model.dynamics == Dynamics::Relativistic);
    CHECK(cfg.model.statistics == Statistics::FermiDirac);
    CHECK(cfg.model.dim == 3);
    CHECK(cfg.model.constants.c == doctest::Approx(2.0));
    // The angular profile was rebuilt for d = 3 and rescaled to epsilon.
    CHECK(cfg.kernel.angular.dim == 3);
    CHECK(cfg.kernel.angular.epsilon == doctest::Approx(0.5));
    CHECK(cfg.quadrature.box_nodes == 12);
    // Quadrature seed follows the run seed.
    CHECK(cfg.quadrature.seed == cfg.seed);
}

TEST_CASE("scenario config: validation rejects inconsistent values") {
    auto with = [](const std::string& body) {
        return make_scenario_config("relax", parse_toml(body));
    };
    CHECK_THROWS_AS(with("t_end = -1.0\n"), ConfigError);
    CHECK_THROWS_AS(with("dt = 10.0\nt_end = 1.0\n"), ConfigError);
    CHECK_THROWS_AS(with("grid_nodes = 2\n"), ConfigError);
    CHECK_THROWS_AS(with("initial = \"nonsense\"\n"), ConfigError);
    CHECK_THROWS_AS(with("initial = \"fixture:x\"\n"), ConfigError);
    CHECK_THROWS_AS(with("epsilon_list = [0.4, -0.1]\n"), ConfigError);
    CHECK_THROWS_AS(with("epsilon_list = [4.0]\n"), ConfigError);
    CHECK_THROWS_AS(with("seed = -3\n"), ConfigError);
    CHECK_THROWS_AS(with("[model]\ndim = 4\n"), ConfigError);
    CHECK_THROWS_AS(with("[model]\nhbar = 2.0\n"), ConfigError);
    CHECK_THROWS_AS(with("[kernel]\nnu = 2.5\n"), ConfigError);
    CHECK_NOTHROW(with("initial = \"fixture:2\"\n"));
}

TEST_CASE("every scenario has a valid default configuration") {
    for (const std::string& name : scenario_names()) {
        const ScenarioConfig cfg = default_scenario_config(name);
        CHECK_NOTHROW(cfg.validate());
        CHECK(cfg.scenario == name);
    }
    // Sweep scenarios pre-select a quantum statistics; solver scenarios use
    // the full angular range.
    CHECK(default_scenario_config("semiclassical").model.statistics ==
          Statistics::BoseEinstein);
    CHECK(default_scenario_config("lorentz-selftest").model.dynamics ==
          Dynamics::Relativistic);
    CHECK(default_scenario_config("relax").kernel.angular.epsilon ==
          doctest::Approx(M_PI));
}

TEST_CASE("config hash implements FNV-1a with the standard vectors") {
    CHECK(config_hash("") == "cbf29ce484222325");
    CHECK(config_hash("a") == "af63dc4c8601ec8c");
    CHECK(config_hash("hello") != config_hash("hellp"));
    CHECK(config_hash("x").size() == 16);
}

TEST_CASE("CSV output is RFC 4180 with round-trip numerics") {
    CsvTable table;
    table.header = {"name", "value", "count"};
    table.rows.push_back({std::string("plain"), 0.1, std::int64_t{3}});
    table.rows.push_back({std::string("needs,quote"), 2.0, std::int64_t{-1}});
    table.rows.push_back({std::string("has\"inner"), -0.5, std::int64_t{0}});
    const std::string text = format_csv(table);
    CHECK(text ==
          "name,value,count\r\n"
          "plain,0.10000000000000001,3\r\n"
          "\"needs,quote\",2,-1\r\n"
          "\"has\"\"inner\",-0.5,0\r\n");

    CsvTable bad = table;
    bad.rows.push_back({std::string("short")});
    CHECK_THROWS_AS(format_csv(bad), Error);
}

TEST_CASE("JSON output: nesting, escapes, non-finite values") {
    JsonObject inner;
    inner.set("flag", true);
    inner.set("count", std::int64_t{7});
    JsonObject doc;
    doc.set("label", std::string("line\nbreak \"quoted\""));
    doc.set("value", 0.25);
    doc.set("bad", std::nan(""));
    doc.set("list", std::vector<double>{1.0, 0.5});
    doc.set_object("inner", inner);
    const std::string text = doc.dump();
    CHECK(text.find("\"label\": \"line\\nbreak \\\"quoted\\\"\"") != std::string::npos);
    CHECK(text.find("\"value\": 0.25") != std::string::npos);
    CHECK(text.find("\"bad\": \"nan\"") != std::string::npos);
    CHECK(text.find("\"list\": [1, 0.5]") != std::string::npos);
    CHECK(text.find("\"flag\": true") != std::string::npos);
    CHECK(text.find("\"count\": 7") != std::string::npos);

    CHECK(json_escape("tab\there") == "tab\\there");
    CHECK(json_escape("back\\slash") == "back\\\\slash");
}

TEST_CASE("text files round-trip and directories are created on demand") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "kinetica_test_io" / "nested";
    ensure_directory(dir.string());
    CHECK(fs::exists(dir));
    const fs::path file = dir / "roundtrip.txt";
    const std::string payload = "alpha,beta\r\n1,2\r\n";
    write_text_file(file.string(), payload);
    CHECK(read_text_file(file.string()) == payload);
    fs::remove_all(fs::temp_directory_path() / "kinetica_test_io");

    CHECK_THROWS_AS(read_text_file("/nonexistent/kinetica/file.txt"), Error);
}

TEST_CASE("run metadata embeds the library version") {
    const JsonObject meta = run_metadata("conservation", config_hash(""), 42, 1);
    const std::string text = meta.dump();
    CHECK(text.find("kinetica 0.1.0") != std::string::npos);
    CHECK(text.find("cbf29ce484222325") != std::string::npos);
    CHECK(text.find("conservation") != std::string::npos);
}

TEST_CASE("scenario registry") {
    const std::vector<std::string>& names = scenario_names();
    REQUIRE(names.size() == 12);
    CHECK(names.front() == "lorentz-selftest");
    CHECK(names.back() == "generic-audit");
    for (const std::string& n : names) CHECK(is_scenario(n));
    CHECK_FALSE(is_scenario("no-such-scenario"));

    ScenarioConfig cfg = default_scenario_config("conservation");
    cfg.scenario = "no-such-scenario";
    CHECK_THROWS_AS(run_scenario(cfg), ConfigError);
}
