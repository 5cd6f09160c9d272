#pragma once

#include <string>
#include <vector>

namespace phasewave {

// One pass/fail record from a scenario-embedded check.
struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ScenarioResult {
    std::string scenario;
    std::string preset;  // empty unless launched through run_preset
    bool passed = false;
    std::vector<CheckResult> checks;
    std::vector<std::string> outputs;  // CSV paths written, relative to out_dir
    std::string manifest_path;
};

// Parses a JSON scenario config and runs it, writing CSV artifacts and a
// manifest.json into out_dir (created if absent).  The manifest is written
// even when a check fails; it names every check with measured value and
// tolerance.  Throws ConfigError for malformed/unknown configuration and
// IoError when artifacts cannot be written.  Numeric invariant breaches
// inside the scenario are converted into failed checks, not exceptions.
ScenarioResult run_scenario_json(const std::string& config_text, const std::string& out_dir);

// Built-in configurations used by the acceptance suite.
std::vector<std::pair<std::string, std::string>> preset_table();  // name, description
std::string preset_config(const std::string& name);               // JSON text
ScenarioResult run_preset(const std::string& name, const std::string& out_dir);

}  // namespace phasewave
