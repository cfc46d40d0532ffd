// SPDX-License-Identifier: Apache-2.0
// Command-line front end: `kinetica <scenario> [--config <path>] [--out <dir>]
// [--seed <u64>] [--threads <n>]`.  Loads or defaults the scenario config,
// applies command-line overrides, pins the worker-thread cap, and runs the
// scenario.  Exit status: 0 on pass, 1 on a failed check, 2 on usage or
// configuration errors.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "kinetica/config.hpp"
#include "kinetica/io.hpp"
#include "kinetica/scenarios.hpp"
#include "kinetica/threading.hpp"
#include "kinetica/types.hpp"
#include "kinetica/version.hpp"

namespace {

// Worker-thread cap resolution, strongest first: the --threads flag, the
// KINETICA_THREADS environment variable, then the config file (0 keeps the
// library default of one worker per hardware thread).
int resolve_threads(bool flag_given, int flag_value, int config_value) {
    if (flag_given) return flag_value;
    if (const char* env = std::getenv("KINETICA_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 0) return n;
        } catch (const std::exception&) {
            // Ignore unparsable values; fall through to the config.
        }
        std::fprintf(stderr, "warning: ignoring invalid KINETICA_THREADS=%s\n", env);
    }
    return config_value;
}

std::string scenario_list() {
    std::string out;
    for (const std::string& name : kinetica::scenario_names()) {
        if (!out.empty()) out += ", ";
        out += name;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kinetica: collision-operator checks and kinetic relaxation runs"};
    app.set_version_flag("--version", std::string("kinetica ") + kinetica::version_string);

    std::string scenario;
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int threads = 0;
    bool list_only = false;

    app.add_option("scenario", scenario, "Scenario name (see --list)");
    app.add_option("--config", config_path, "TOML config file (defaults per scenario)")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory for CSV/JSON artifacts");
    auto* seed_opt = app.add_option("--seed", seed, "Run seed (overrides the config)");
    auto* threads_opt =
        app.add_option("--threads", threads, "Worker-thread cap (0 = hardware threads)")
            ->check(CLI::NonNegativeNumber);
    app.add_flag("--list", list_only, "List scenario names and exit");

    CLI11_PARSE(app, argc, argv);

    if (list_only) {
        for (const std::string& name : kinetica::scenario_names()) std::printf("%s\n", name.c_str());
        return 0;
    }
    if (scenario.empty()) {
        std::fprintf(stderr, "error: missing scenario name; one of: %s\n",
                     scenario_list().c_str());
        return 2;
    }
    if (!kinetica::is_scenario(scenario)) {
        std::fprintf(stderr, "error: unknown scenario '%s'; one of: %s\n", scenario.c_str(),
                     scenario_list().c_str());
        return 2;
    }

    try {
        kinetica::ScenarioConfig cfg = config_path.empty()
                                           ? kinetica::default_scenario_config(scenario)
                                           : kinetica::load_scenario_config(scenario, config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed_opt->count() > 0) {
            cfg.seed = seed;
            cfg.quadrature.seed = seed;  // the quadrature seed follows the run seed
        }
        cfg.threads = resolve_threads(threads_opt->count() > 0, threads, cfg.threads);
        cfg.validate();

        kinetica::set_max_threads(cfg.threads);
        kinetica::ensure_directory(cfg.out_dir);

        const kinetica::ScenarioResult result = kinetica::run_scenario(cfg);
        for (const std::string& artifact : result.artifacts)
            std::printf("wrote %s\n", artifact.c_str());
        std::printf("[%s] %s: %s\n", result.pass ? "pass" : "FAIL", result.scenario.c_str(),
                    result.message.c_str());
        return result.pass ? 0 : 1;
    } catch (const kinetica::Error& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 2;
    }
}
