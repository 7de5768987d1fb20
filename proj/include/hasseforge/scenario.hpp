#ifndef HASSEFORGE_SCENARIO_HPP
#define HASSEFORGE_SCENARIO_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hasseforge/json_io.hpp"

// Scenario configs in, verification reports out.  Configs are strict JSON:
// unknown keys are errors, with a JSON pointer to the offending field.  For a
// fixed (config, seed, version) the JSON report is byte-identical between
// runs; wall-clock timings appear only in the text rendering.

namespace hf {

struct RunReport {
  std::string name;
  bool passed = false;
  Json json;         // deterministic machine-readable report
  std::string text;  // human-readable rendering (includes timings)
};

/// throws Error(ConfigInvalid) with a JSON pointer on any schema violation
void validate_scenario(const Json& config);

/// executes a validated config; overrides replace the seed / truncation
RunReport run_scenario(const Json& config, std::optional<std::uint64_t> seed_override = {},
                       std::optional<unsigned> trunc_override = {});

/// builtin scenarios: name plus a one-line summary
const std::vector<std::pair<std::string, std::string>>& builtin_scenarios();

/// the embedded config text for a builtin, or nullptr when unknown
const char* builtin_config(const std::string& name);

/// what a scenario exercises, as text; throws Error(UnknownScenario)
std::string explain_scenario(const std::string& name);

/// log levels read from HASSEFORGE_LOG: quiet, warn (default), info, debug
enum class LogLevel { quiet = 0, warn = 1, info = 2, debug = 3 };
LogLevel log_level();
void log_line(LogLevel level, const std::string& msg);

}  // namespace hf

#endif
