#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "phasewave/errors.hpp"
#include "phasewave/scenario.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw phasewave::IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) throw phasewave::IoError("failed reading config file: " + path);
    return buf.str();
}

void print_result(const phasewave::ScenarioResult& r) {
    for (const phasewave::CheckResult& c : r.checks) {
        std::printf("%s %-28s measured %-14.6g tolerance %-12.6g %s\n",
                    c.passed ? "[ok]  " : "[FAIL]", c.name.c_str(), c.measured, c.tolerance,
                    c.detail.c_str());
    }
    std::printf("%s: %s (%zu checks, manifest %s)\n", r.scenario.c_str(),
                r.passed ? "PASS" : "FAIL", r.checks.size(), r.manifest_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    // Accepted for forward compatibility; every pipeline currently runs on a
    // single thread regardless of the requested count.
    if (const char* threads = std::getenv("PHASEWAVE_THREADS")) {
        const long n = std::strtol(threads, nullptr, 10);
        if (n < 1) {
            std::fprintf(stderr, "warning: ignoring invalid PHASEWAVE_THREADS=%s\n", threads);
        }
    }

    CLI::App app{"phasewave: a phase-space wave-mechanics laboratory"};
    app.require_subcommand(1);

    std::string config_path, preset, out_dir;
    CLI::App* run = app.add_subcommand("run", "run a scenario from a config file or a preset");
    run->add_option("config", config_path, "path to a JSON scenario config");
    run->add_option("--preset", preset, "name of a built-in preset (see `presets`)");
    run->add_option("--out", out_dir, "output directory (default: config output_dir, else .)");

    CLI::App* presets_cmd = app.add_subcommand("presets", "list built-in presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? 0 : 2;
    }

    try {
        if (presets_cmd->parsed()) {
            for (const auto& [name, description] : phasewave::preset_table()) {
                std::printf("%-26s %s\n", name.c_str(), description.c_str());
            }
            return 0;
        }

        if (preset.empty() == config_path.empty()) {
            std::fprintf(stderr, "error: provide exactly one of <config> or --preset\n");
            return 2;
        }
        const phasewave::ScenarioResult result =
            preset.empty() ? phasewave::run_scenario_json(slurp(config_path), out_dir)
                           : phasewave::run_preset(preset, out_dir);
        print_result(result);
        return result.passed ? 0 : 1;
    } catch (const phasewave::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const phasewave::IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 3;
    } catch (const phasewave::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
