/* C interface to the consensus-on-measurement distributed filter library.
 *
 * All functionality is reached through an opaque scenario handle loaded
 * from the JSON scenario format. Functions return a status code; on
 * failure, comdf_last_error() gives a human-readable message for the
 * calling thread. Strings returned through out-parameters are owned by the
 * caller and must be released with comdf_string_free().
 */
#ifndef COMDF_H
#define COMDF_H

#include <stdint.h>

#if defined _WIN32 || defined __CYGWIN__
#define COMDF_API __declspec(dllexport)
#else
#define COMDF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum comdf_status {
    COMDF_OK = 0,
    COMDF_ERR_INVALID_ARGUMENT = 1, /* malformed values or dimensions */
    COMDF_ERR_PARSE = 2,            /* scenario text cannot be parsed */
    COMDF_ERR_INFEASIBLE = 3,       /* a design precondition fails */
    COMDF_ERR_NUMERIC = 4,          /* an iterative solver did not converge */
    COMDF_ERR_IO = 5                /* file cannot be read */
} comdf_status;

/* Opaque parsed scenario. */
typedef struct comdf_scenario comdf_scenario;

COMDF_API const char* comdf_version(void);

/* Stable name for a status code, e.g. "COMDF_ERR_PARSE". */
COMDF_API const char* comdf_status_name(comdf_status status);

/* Message of the most recent failure on this thread; empty string if none. */
COMDF_API const char* comdf_last_error(void);

COMDF_API comdf_status comdf_scenario_load_json(const char* text, comdf_scenario** out);
COMDF_API comdf_status comdf_scenario_load_file(const char* path, comdf_scenario** out);
COMDF_API void comdf_scenario_free(comdf_scenario* scenario);

/* Overrides the Monte Carlo seed of a loaded scenario. */
COMDF_API comdf_status comdf_scenario_set_seed(comdf_scenario* scenario, uint64_t seed);

/* Canonical JSON text of the scenario (round-trips to an equal scenario). */
COMDF_API comdf_status comdf_scenario_to_json(const comdf_scenario* scenario, char** out_json);

/* Consensus-design report as JSON: gain table, rho(G), ||G||_2, the fusion
 * step threshold l0 and the norms entering it, plus the connectivity /
 * observability verdicts. Returns COMDF_OK when the design is feasible and
 * COMDF_ERR_INFEASIBLE (with the report still written) when it is not. */
COMDF_API comdf_status comdf_design_report(const comdf_scenario* scenario, char** out_json);

/* Stationary-gap sweep over fusion depths l_min..l_max as CSV (columns
 * l,gap,bound_radius,bound_norm,rho_G,norm_G,status plus a '#' JSON footer
 * with the fitted decay constants). */
COMDF_API comdf_status comdf_gap_sweep(const comdf_scenario* scenario, long l_min, long l_max,
                                       char** out_csv);

/* Seeded Monte Carlo run: per-step mean squared errors of every sensor and
 * of the centralized filter as CSV (columns k,sensor_id,mse; sensor 0 is
 * the centralized filter), plus a JSON summary with the steady-state MSEs
 * and the matching stationary trace predictions. Either out-parameter may
 * be NULL if that output is not wanted. */
COMDF_API comdf_status comdf_simulate(const comdf_scenario* scenario, char** out_csv,
                                      char** out_summary_json);

COMDF_API void comdf_string_free(char* text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* COMDF_H */
