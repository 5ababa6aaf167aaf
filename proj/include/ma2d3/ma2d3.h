/*
 * ma2d3 -- convex-integration toolkit for the two-dimensional Monge-Ampere
 * system in codimension three: corrugation steps, error-absorption
 * iterations, Fibonacci frequency schedules with exact exponent arithmetic,
 * and the Nash-Kuiper outer loop.
 *
 * C interface over the shared library. All state lives behind opaque
 * handles; every call returns a status code and leaves a human-readable
 * message for ma2d3_last_error() on failure. Handles are not thread-safe;
 * distinct handles may be used from distinct threads.
 */
#ifndef MA2D3_H
#define MA2D3_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ma2d3_status {
  MA2D3_OK = 0,
  MA2D3_VERIFY_FAILED = 1, /* a condition report or self test failed */
  MA2D3_CONFIG_ERROR = 2,  /* bad key, bad value, missing input, IO */
  MA2D3_NUMERIC_ERROR = 3  /* amplitude/positivity/resolution/margin */
} ma2d3_status;

typedef struct ma2d3_config ma2d3_config;
typedef struct ma2d3_report ma2d3_report;

/* configuration ---------------------------------------------------------- */

ma2d3_config* ma2d3_config_new(void);
void ma2d3_config_free(ma2d3_config* cfg);

/* set one key=value pair; keys come from the documented registry */
ma2d3_status ma2d3_config_set(ma2d3_config* cfg, const char* key, const char* value);

/* load a flat key=value file ('#' comments allowed) */
ma2d3_status ma2d3_config_load(ma2d3_config* cfg, const char* path);

/* one help line per registered key, for --help output */
const char* ma2d3_config_keys(void);

/* execution -------------------------------------------------------------- */

/*
 * Run one subcommand: verify-schedule | simulate-bounds | run-stage | run |
 * density | export-mesh | self-test. Artifacts are written under the
 * configured output directory. On any outcome (including verification
 * failure) a report handle is produced when *out is non-NULL.
 */
ma2d3_status ma2d3_run(ma2d3_config* cfg, const char* subcommand, ma2d3_report** out);

const char* ma2d3_report_text(const ma2d3_report* rep);
int ma2d3_report_exit_code(const ma2d3_report* rep);
void ma2d3_report_free(ma2d3_report* rep);

/* exact exponent arithmetic ------------------------------------------------ */

/* Fibonacci numbers with F0 = F1 = 1; returns -1 outside [0, 90] */
int64_t ma2d3_fibonacci(int k);

/*
 * Frequency-schedule exponent summary: the blow-up/decay quotient r,
 * the Holder exponent alpha = 1/(1+2r) and the admissible gamma bound,
 * for N, K >= 4. Any output pointer may be NULL.
 */
ma2d3_status ma2d3_exponent_summary(int n, int k, double* r, double* alpha, double* gamma_max);

/* decay and growth exponents of the bound ledger, as exact integers
 * (growth is integral for even N; it is rounded otherwise) */
ma2d3_status ma2d3_ledger_exponents(int n, int k, int64_t* decay, double* growth);

/* diagnostics -------------------------------------------------------------- */

/* thread-local message for the most recent failure */
const char* ma2d3_last_error(void);

const char* ma2d3_version(void);

#ifdef __cplusplus
}
#endif

#endif /* MA2D3_H */
