#include "hasseforge.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "hasseforge/scenario.hpp"
#include "hasseforge/version.hpp"

struct hf_result {
  int passed = 0;
  std::string json;
  std::string text;
  std::string error;
};

namespace {

hf_status finish_error(hf_result** out, hf_status status, const std::string& msg) {
  if (out) {
    auto* r = new (std::nothrow) hf_result;
    if (r) {
      r->error = msg;
      *out = r;
    }
  }
  return status;
}

hf_status run_json(const hf::Json& config, const char* overrides_json, hf_result** out) {
  if (out) *out = nullptr;
  try {
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> trunc;
    if (overrides_json && *overrides_json) {
      hf::Json ov = hf::Json::parse(overrides_json, nullptr, false);
      if (ov.is_discarded())
        return finish_error(out, HF_CONFIG_ERROR, "overrides are not valid JSON");
      if (!ov.is_object())
        return finish_error(out, HF_CONFIG_ERROR, "overrides must be a JSON object");
      for (const auto& [k, v] : ov.items()) {
        if (k == "seed")
          seed = v.get<std::uint64_t>();
        else if (k == "trunc")
          trunc = v.get<unsigned>();
        else
          return finish_error(out, HF_CONFIG_ERROR, "unknown override '" + k + "'");
      }
    }
    hf::RunReport rep = hf::run_scenario(config, seed, trunc);
    auto* r = new hf_result;
    r->passed = rep.passed ? 1 : 0;
    r->json = rep.json.dump(2);
    r->text = rep.text;
    if (out) *out = r;
    else delete r;
    return rep.passed ? HF_OK : HF_CHECK_FAILED;
  } catch (const hf::Error& e) {
    hf_status st = e.code() == hf::Err::ConfigInvalid || e.code() == hf::Err::UnknownScenario
                       ? HF_CONFIG_ERROR
                       : HF_RUNTIME_ERROR;
    return finish_error(out, st, e.what());
  } catch (const std::exception& e) {
    return finish_error(out, HF_RUNTIME_ERROR, e.what());
  }
}

}  // namespace

extern "C" {

const char* hf_version(void) { return HASSEFORGE_VERSION; }

hf_status hf_run_config_json(const char* config_json, const char* overrides_json,
                             hf_result** out) {
  if (!config_json) return finish_error(out, HF_CONFIG_ERROR, "null config");
  hf::Json config = hf::Json::parse(config_json, nullptr, false);
  if (config.is_discarded())
    return finish_error(out, HF_CONFIG_ERROR, "config is not valid JSON");
  return run_json(config, overrides_json, out);
}

hf_status hf_run_config_file(const char* path, const char* overrides_json, hf_result** out) {
  if (!path) return finish_error(out, HF_CONFIG_ERROR, "null path");
  std::ifstream in(path);
  if (!in) return finish_error(out, HF_CONFIG_ERROR, std::string("cannot open ") + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return hf_run_config_json(buf.str().c_str(), overrides_json, out);
}

hf_status hf_run_builtin(const char* name, const char* overrides_json, hf_result** out) {
  if (!name) return finish_error(out, HF_CONFIG_ERROR, "null scenario name");
  const char* cfg = hf::builtin_config(name);
  if (!cfg)
    return finish_error(out, HF_CONFIG_ERROR,
                        std::string("UnknownScenario: no builtin named '") + name + "'");
  return hf_run_config_json(cfg, overrides_json, out);
}

int hf_result_passed(const hf_result* r) { return r ? r->passed : 0; }
const char* hf_result_json(const hf_result* r) { return r ? r->json.c_str() : ""; }
const char* hf_result_text(const hf_result* r) { return r ? r->text.c_str() : ""; }
const char* hf_result_error(const hf_result* r) { return r ? r->error.c_str() : ""; }
void hf_result_free(hf_result* r) { delete r; }

char* hf_list_scenarios_json(void) {
  hf::Json arr = hf::Json::array();
  for (const auto& [name, summary] : hf::builtin_scenarios()) {
    hf::Json item;
    item["name"] = name;
    item["summary"] = summary;
    arr.push_back(std::move(item));
  }
  std::string s = arr.dump(2);
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (buf) std::memcpy(buf, s.c_str(), s.size() + 1);
  return buf;
}

hf_status hf_explain_scenario(const char* name, char** out_text) {
  if (out_text) *out_text = nullptr;
  if (!name) return HF_CONFIG_ERROR;
  try {
    std::string text = hf::explain_scenario(name);
    if (out_text) {
      *out_text = static_cast<char*>(std::malloc(text.size() + 1));
      if (*out_text) std::memcpy(*out_text, text.c_str(), text.size() + 1);
    }
    return HF_OK;
  } catch (const hf::Error&) {
    return HF_CONFIG_ERROR;
  }
}

void hf_string_free(char* s) { std::free(s); }

}  // extern "C"
