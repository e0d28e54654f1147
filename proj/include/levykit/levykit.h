/* levykit C API: a toolkit for infinitely divisible laws.
 *
 * Levy-Khintchine triplet calculus with a skew-factor solver, an exact
 * lattice-measure algebra with an infinite-divisibility test, a seeded
 * sampler, and a Gaussian-Poisson chaos / second-quantisation engine with
 * diagram verification.
 *
 * Conventions:
 *  - Objects are opaque handles created by lvk_*_from_json / builders and
 *    released by the matching lvk_*_free. Handles are immutable and safe to
 *    share across threads.
 *  - Every function returns an lvk_status; LVK_OK means success. On error,
 *    lvk_last_error() returns a thread-local description.
 *  - Strings returned through char** are heap-allocated; release them with
 *    lvk_string_free.
 *  - Reports are JSON documents with {"schema": 1, ..., "pass": bool}.
 */

#ifndef LEVYKIT_H
#define LEVYKIT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lvk_status {
  LVK_OK = 0,
  LVK_ERR_INVALID_ARGUMENT = 1,
  LVK_ERR_DIMENSION_MISMATCH = 2,
  LVK_ERR_PARSE = 3,
  LVK_ERR_PRECONDITION = 4,
  LVK_ERR_NOT_SKEW_GAUSSIAN = 5,
  LVK_ERR_NOT_SKEW_JUMP = 6,
  LVK_ERR_IO = 7,
  LVK_ERR_UNSUPPORTED = 8,
  LVK_ERR_INTERNAL = 9
} lvk_status;

const char* lvk_status_name(lvk_status status);

/* Thread-local message describing the most recent failure in this thread. */
const char* lvk_last_error(void);

const char* lvk_version(void);

void lvk_string_free(char* s);

/* Run configuration shared by report-producing calls. Zero-initialise and
 * fill; lvk_config_default supplies the standard values. */
typedef struct lvk_config {
  uint64_t seed;
  size_t mc_samples;
  int horizon;       /* lattice / expansion horizon N */
  double exact_tol;  /* exact-path comparison tolerance */
  double mc_sigma;   /* Monte-Carlo acceptance band in standard errors */
  int workers;
} lvk_config;

lvk_config lvk_config_default(void);

/* ------------------------------------------------------------------ */
/* Levy-Khintchine triplets                                            */

typedef struct lvk_triplet lvk_triplet;

/* {"dim": d, "drift": [...], "cov": [[...]], "atoms": [{"x": [...], "w": w}]} */
lvk_status lvk_triplet_from_json(const char* json, lvk_triplet** out);
lvk_status lvk_triplet_to_json(const lvk_triplet* t, char** json_out);
void lvk_triplet_free(lvk_triplet* t);

lvk_status lvk_triplet_dim(const lvk_triplet* t, int* dim_out);

/* psi(u); the law's Fourier transform is exp(psi(u)). */
lvk_status lvk_char_exponent(const lvk_triplet* t, const double* u, int dim,
                             double* re_out, double* im_out);

lvk_status lvk_convolve(const lvk_triplet* a, const lvk_triplet* b, lvk_triplet** out);

/* t_map is rows x cols, row-major; cols must equal the triplet dimension. */
lvk_status lvk_pushforward(const double* t_map, int rows, int cols, const lvk_triplet* t,
                           lvk_triplet** out);

/* Cumulants kappa_1..kappa_n of <X, u>. */
lvk_status lvk_cumulants(const lvk_triplet* t, const double* u, int dim, int n_max,
                         double* kappa_out);

/* Solves T(lambda1) * rho = lambda2. On success *rho_out holds the factor.
 * On LVK_ERR_NOT_SKEW_* the report still describes the failure witness.
 * Either output may be NULL when not wanted. */
lvk_status lvk_skew_solve(const double* t_map, int rows, int cols, const lvk_triplet* t1,
                          const lvk_triplet* t2, lvk_triplet** rho_out,
                          char** report_json_out);

/* Full skew report: solve plus the Gaussian/jump equivalence check. */
lvk_status lvk_skew_report(const double* t_map, int rows, int cols, const lvk_triplet* t1,
                           const lvk_triplet* t2, const lvk_config* cfg,
                           char** report_json_out);

/* ------------------------------------------------------------------ */
/* Lattice measures                                                    */

typedef struct lvk_lattice lvk_lattice;

/* {"coeffs": {"site": "p/q", ...}} */
lvk_status lvk_lattice_from_json(const char* json, lvk_lattice** out);
lvk_status lvk_lattice_to_json(const lvk_lattice* m, char** json_out);
void lvk_lattice_free(lvk_lattice* m);

lvk_status lvk_lattice_convolve(const lvk_lattice* a, const lvk_lattice* b,
                                lvk_lattice** out);
lvk_status lvk_lattice_power(const lvk_lattice* a, unsigned k, lvk_lattice** out);
lvk_status lvk_lattice_exp(const lvk_lattice* nu, int horizon, lvk_lattice** out);
lvk_status lvk_lattice_levy_from_distribution(const lvk_lattice* r, int horizon,
                                              lvk_lattice** out);

/* Verdict JSON: {"status": "ID_up_to_N"|"NotID", "recovered_levy": ...,
 * "witness": {"site": s, "weight": "p/q"}?}. */
lvk_status lvk_lattice_id_test(const lvk_lattice* r, int horizon, char** verdict_json_out);

/* The complete worked counterexample report. */
lvk_status lvk_rosinski_report(const lvk_config* cfg, char** report_json_out);

lvk_status lvk_idtest_report(const lvk_lattice* law, const lvk_config* cfg,
                             char** report_json_out);

/* ------------------------------------------------------------------ */
/* Sampling                                                            */

/* Draws n samples into out (n * dim doubles, row-major). Deterministic for
 * fixed (seed, n, workers). */
lvk_status lvk_sample_id(const lvk_triplet* t, uint64_t seed, size_t n, int workers,
                         double* out);

lvk_status lvk_sample_csv(const lvk_triplet* t, uint64_t seed, size_t n, int workers,
                          const char* path);

/* Empirical characteristic function of a batch at u. */
lvk_status lvk_empirical_char(const double* batch, size_t n, int dim, const double* u,
                              double* re_out, double* im_out, double* se_out);

/* ------------------------------------------------------------------ */
/* Scenarios and diagram verification                                  */

typedef struct lvk_scenario lvk_scenario;
typedef struct lvk_poly lvk_poly;

/* {"T": [[...]], "lambda1": <triplet>, "rho": <triplet>}; lambda2 derived. */
lvk_status lvk_scenario_from_json(const char* json, lvk_scenario** out);
lvk_status lvk_scenario_to_json(const lvk_scenario* sc, char** json_out);
void lvk_scenario_free(lvk_scenario* sc);

/* Named members of the canonical library: "identity", "mehler",
 * "rank-deficient". */
lvk_status lvk_scenario_builtin(const char* name, lvk_scenario** out);

/* Contraction blocks as CSV matrices, for inspection. */
lvk_status lvk_scenario_export_operators(const lvk_scenario* sc, const char* gaussian_csv,
                                         const char* poisson_csv);

/* {"kind": "spatial", "dim": d, "terms": [{"exp": [...], "c": c}]} */
lvk_status lvk_poly_from_json(const char* json, lvk_poly** out);
lvk_status lvk_poly_to_json(const lvk_poly* f, char** json_out);
void lvk_poly_free(lvk_poly* f);

/* P_T f through the scenario's skew factor (exact path). */
lvk_status lvk_apply_pt(const lvk_scenario* sc, const lvk_poly* f, lvk_poly** out);

/* mode: "exact" or "mc". max_level < 0 means deg f. */
lvk_status lvk_verify_report(const lvk_scenario* sc, const lvk_poly* f, int max_level,
                             const char* mode, const lvk_config* cfg,
                             char** report_json_out);
lvk_status lvk_diagram_report(const lvk_scenario* sc, const lvk_poly* f, int max_level,
                              const char* mode, const lvk_config* cfg,
                              char** report_json_out);

/* True in *pass_out iff the report's "pass" field is true. */
lvk_status lvk_report_pass(const char* report_json, int* pass_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LEVYKIT_H */
