/* coxlink: toric Cox-ring toolkit for 2-ray games and Sarkisov links.
 *
 * C interface over the shared library. All inputs and outputs are UTF-8/JSON
 * strings; output strings are owned by the caller and released with
 * coxlink_free_string. Every call reports failures through the return code,
 * with a human-readable message available from coxlink_last_error until the
 * next call on the same context. Contexts are not thread-safe; use one per
 * thread.
 */
#ifndef COXLINK_H
#define COXLINK_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define COXLINK_OK 0
#define COXLINK_EXPECTATION_FAILED 1
#define COXLINK_INVALID_INPUT 2

unsigned coxlink_abi_version(void);

typedef struct coxlink_ctx coxlink_ctx;

coxlink_ctx* coxlink_ctx_new(void);
void coxlink_ctx_free(coxlink_ctx* ctx);
const char* coxlink_last_error(const coxlink_ctx* ctx);
void coxlink_free_string(char* s);

/* Run a scenario file: executes its actions, returns the JSON report.
 * overrides_json may be NULL or {"prime": p, "seed": s}. Returns
 * COXLINK_EXPECTATION_FAILED (report still produced) when an expectation
 * fails. */
int coxlink_run_scenario(coxlink_ctx* ctx, const char* scenario_json,
                         const char* overrides_json, char** report_json);

/* Point count of the scenario's subvariety (stable across the configured
 * seed replicas). */
int coxlink_count(coxlink_ctx* ctx, const char* scenario_json,
                  const char* overrides_json, long long* out_count);

/* Combine run reports into one DOT digraph of models and maps. */
int coxlink_diagram(coxlink_ctx* ctx, const char* const* report_jsons, size_t n,
                    char** dot_out);

/* Presentation utilities. The input is either a presentation object
 * ({"rank", "variables", "irrelevant"}) or a bare matrix
 * ({"names": [...], "rows": [[...], ...]}). */
int coxlink_wellform(coxlink_ctx* ctx, const char* presentation_json,
                     char** out_json);
int coxlink_chambers(coxlink_ctx* ctx, const char* presentation_json,
                     char** out_json);
int coxlink_validate(coxlink_ctx* ctx, const char* presentation_json,
                     char** out_json);

/* Perform only the blow-up of the scenario's first link action. */
int coxlink_blowup(coxlink_ctx* ctx, const char* scenario_json,
                   const char* overrides_json, char** out_json);

/* Classify the coordinate points of the scenario's subvariety and run the
 * quasi-smoothness sampler. overrides_json may carry {"trials": n}. */
int coxlink_sing(coxlink_ctx* ctx, const char* scenario_json,
                 const char* overrides_json, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* COXLINK_H */
