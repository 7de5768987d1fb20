/*
 * hasseforge C API: scenario configs in, verification reports out.
 *
 * All functions are thread-safe; results are plain heap objects owned by the
 * caller and released with hf_result_free / hf_string_free.  Status codes
 * mirror the CLI exit codes (0 pass, 1 check failure, 2 config error).
 */
#ifndef HASSEFORGE_H
#define HASSEFORGE_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  HF_OK = 0,
  HF_CHECK_FAILED = 1,
  HF_CONFIG_ERROR = 2,
  HF_RUNTIME_ERROR = 3
} hf_status;

typedef struct hf_result hf_result;

const char* hf_version(void);

/* overrides_json is optional (NULL) or an object like {"seed": 7, "trunc": 24} */
hf_status hf_run_config_json(const char* config_json, const char* overrides_json,
                             hf_result** out);
hf_status hf_run_config_file(const char* path, const char* overrides_json, hf_result** out);
hf_status hf_run_builtin(const char* name, const char* overrides_json, hf_result** out);

/* 1 when every check passed; 0 otherwise (also 0 on config/runtime errors) */
int hf_result_passed(const hf_result* r);
/* deterministic report JSON; empty string when the run never started */
const char* hf_result_json(const hf_result* r);
/* human-readable rendering of the report (includes timings) */
const char* hf_result_text(const hf_result* r);
/* non-empty error message when the status was not HF_OK / HF_CHECK_FAILED */
const char* hf_result_error(const hf_result* r);
void hf_result_free(hf_result* r);

/* JSON array of {"name": ..., "summary": ...}; free with hf_string_free */
char* hf_list_scenarios_json(void);
/* explanation text for a builtin scenario; HF_CONFIG_ERROR when unknown */
hf_status hf_explain_scenario(const char* name, char** out_text);
void hf_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
