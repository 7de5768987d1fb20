// Command-line front end.  Talks to the library exclusively through the
// extern-C surface in hasseforge.h; report merging and flag handling live
// here, the mathematics lives behind the shared library boundary.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hasseforge.h"

namespace {

struct RunOutcome {
  std::string source;
  std::string name;  // scenario name when available
  hf_status status = HF_RUNTIME_ERROR;
  int passed = 0;
  std::string json, text, error;
};

RunOutcome run_one(const std::string& source, const std::string& overrides) {
  RunOutcome out;
  out.source = source;
  hf_result* res = nullptr;
  const char* ov = overrides.empty() ? nullptr : overrides.c_str();
  if (source.rfind("builtin:", 0) == 0)
    out.status = hf_run_builtin(source.substr(8).c_str(), ov, &res);
  else
    out.status = hf_run_config_file(source.c_str(), ov, &res);
  if (res) {
    out.passed = hf_result_passed(res);
    out.json = hf_result_json(res);
    out.text = hf_result_text(res);
    out.error = hf_result_error(res);
    hf_result_free(res);
  }
  out.name = source;
  if (!out.json.empty()) {
    auto parsed = nlohmann::json::parse(out.json, nullptr, false);
    if (!parsed.is_discarded() && parsed.contains("scenario"))
      out.name = parsed["scenario"].get<std::string>();
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hasseforge: exact iterative derivations on function fields and central "
               "simple algebras"};
  app.require_subcommand(1);

  // run
  std::vector<std::string> sources;
  std::string format = "text";
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  unsigned trunc = 0;
  bool trunc_set = false;
  bool parallel = false;
  auto* run = app.add_subcommand("run", "run scenario configs (paths or builtin:<name>)");
  run->add_option("configs", sources, "config files or builtin:<name>")->required();
  run->add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  run->add_option("--out", out_path, "write the report to a file instead of stdout");
  run->add_option("--seed", seed, "override the scenario seed")->trigger_on_parse();
  run->add_flag("--parallel", parallel, "run independent scenarios concurrently");
  auto* seed_opt = run->get_option("--seed");
  auto* trunc_opt = run->add_option("--trunc", trunc, "global truncation override");

  // list
  auto* list = app.add_subcommand("list", "list the builtin scenarios");

  // explain
  std::string explain_name;
  auto* explain = app.add_subcommand("explain", "describe what a builtin scenario verifies");
  explain->add_option("name", explain_name, "scenario name")->required();

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    char* s = hf_list_scenarios_json();
    auto parsed = nlohmann::json::parse(s ? s : "[]");
    hf_string_free(s);
    for (const auto& item : parsed)
      std::printf("%-28s %s\n", item["name"].get<std::string>().c_str(),
                  item["summary"].get<std::string>().c_str());
    return 0;
  }

  if (explain->parsed()) {
    char* text = nullptr;
    hf_status st = hf_explain_scenario(explain_name.c_str(), &text);
    if (st != HF_OK) {
      std::fprintf(stderr, "UnknownScenario: '%s' is not a builtin scenario\n",
                   explain_name.c_str());
      return 2;
    }
    std::printf("%s\n", text);
    hf_string_free(text);
    return 0;
  }

  seed_set = seed_opt->count() > 0;
  trunc_set = trunc_opt->count() > 0;
  nlohmann::ordered_json overrides = nlohmann::ordered_json::object();
  if (seed_set) overrides["seed"] = seed;
  if (trunc_set) overrides["trunc"] = trunc;
  std::string ov = overrides.empty() ? "" : overrides.dump();

  std::vector<RunOutcome> outcomes(sources.size());
  if (parallel && sources.size() > 1) {
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < sources.size(); ++i)
      threads.emplace_back([&, i] { outcomes[i] = run_one(sources[i], ov); });
    for (auto& t : threads) t.join();
  } else {
    for (std::size_t i = 0; i < sources.size(); ++i) outcomes[i] = run_one(sources[i], ov);
  }

  // deterministic merge by scenario name
  std::stable_sort(outcomes.begin(), outcomes.end(),
                   [](const RunOutcome& a, const RunOutcome& b) { return a.name < b.name; });

  std::string rendered;
  if (format == "json") {
    if (outcomes.size() == 1 && !outcomes[0].json.empty()) {
      rendered = outcomes[0].json + "\n";
    } else {
      nlohmann::ordered_json merged = nlohmann::ordered_json::array();
      for (const auto& o : outcomes) {
        if (!o.json.empty())
          merged.push_back(nlohmann::ordered_json::parse(o.json));
        else
          merged.push_back(nlohmann::ordered_json{{"scenario", o.source}, {"error", o.error}});
      }
      rendered = merged.dump(2) + "\n";
    }
  } else {
    for (const auto& o : outcomes) {
      if (!o.text.empty()) rendered += o.text;
      if (!o.error.empty()) rendered += o.source + ": error: " + o.error + "\n";
    }
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::fprintf(stderr, "cannot write %s\n", out_path.c_str());
      return 2;
    }
    out << rendered;
  } else {
    std::fputs(rendered.c_str(), stdout);
  }

  int exit_code = 0;
  for (const auto& o : outcomes) {
    if (o.status == HF_CONFIG_ERROR || o.status == HF_RUNTIME_ERROR) {
      std::fprintf(stderr, "%s: %s\n", o.source.c_str(), o.error.c_str());
      return 2;
    }
    if (o.status == HF_CHECK_FAILED) exit_code = 1;
  }
  return exit_code;
}
