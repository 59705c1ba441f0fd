/*
 * qbell -- Tsallis q-entropic metrics and Bell / Leggett-Garg inequality
 * violations under decoherence.
 *
 * C API of the shared library. Every fallible entry point returns a
 * qbell_status; on failure a human-readable message is available from
 * qbell_last_error() (thread-local). Opaque handles must be released with
 * the matching *_free function.
 */
#ifndef QBELL_H
#define QBELL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qbell_status {
  QBELL_OK = 0,
  QBELL_ERR_NULL_POINTER = 1, /* required pointer argument was NULL */
  QBELL_ERR_USAGE = 2,        /* invalid enum value or call combination */
  QBELL_ERR_VALIDATION = 3,   /* numeric input failed validation */
  QBELL_ERR_NUMERIC = 4,      /* computation produced a non-finite result */
  QBELL_ERR_INTERNAL = 5
} qbell_status;

const char* qbell_status_name(qbell_status status);

/* Message describing the most recent failure on the calling thread. */
const char* qbell_last_error(void);

const char* qbell_version(void);

/* ------------------------------------------------------------------ */
/* enums                                                                */
/* ------------------------------------------------------------------ */

typedef enum qbell_scenario {
  QBELL_SCENARIO_CHSH_DEPHASING = 0,
  QBELL_SCENARIO_LG_SPIN_HALF_DEPHASING = 1,
  QBELL_SCENARIO_LG_SPIN_HALF_DEPOLARIZING = 2,
  QBELL_SCENARIO_LG_SPIN_ONE_DEPHASING = 3
} qbell_scenario;

typedef enum qbell_metric {
  QBELL_METRIC_DELTA = 0,  /* chain-rule conditional entropies */
  QBELL_METRIC_DTILDE = 1  /* linearly weighted conditional entropies */
} qbell_metric;

typedef enum qbell_pair_role {
  QBELL_ROLE_CHSH_AB = 0,          /* detector separation theta */
  QBELL_ROLE_CHSH_SMALL_ANGLE = 1, /* separation theta/3 (three such pairs) */
  QBELL_ROLE_LG_ADJACENT = 2,      /* one time interval */
  QBELL_ROLE_LG_END_TO_END = 3     /* two time intervals */
} qbell_pair_role;

typedef enum qbell_direction {
  QBELL_X_GIVEN_Y = 0,
  QBELL_Y_GIVEN_X = 1
} qbell_direction;

typedef enum qbell_cond_form {
  QBELL_COND_CHAIN = 0,   /* weights p(y)^q, obeys the chain rule */
  QBELL_COND_AVERAGE = 1  /* weights p(y) */
} qbell_cond_form;

typedef enum qbell_lg_system {
  QBELL_LG_SPIN_HALF = 0,
  QBELL_LG_SPIN_ONE = 1
} qbell_lg_system;

typedef enum qbell_lg_channel {
  QBELL_LG_DEPHASING = 0,
  QBELL_LG_DEPOLARIZING = 1
} qbell_lg_channel;

/* Canonical names used in CLI flags and CSV output. */
const char* qbell_scenario_name(qbell_scenario scenario);
qbell_status qbell_scenario_parse(const char* name, qbell_scenario* out);
const char* qbell_metric_name(qbell_metric metric);
qbell_status qbell_metric_parse(const char* name, qbell_metric* out);

/* ------------------------------------------------------------------ */
/* q-entropies and information distances                                */
/* ------------------------------------------------------------------ */

/* ln_q(xi) = (xi^(1-q) - 1)/(1-q); natural log at q = 1. xi > 0, q > 0. */
qbell_status qbell_q_log(double xi, double q, double* out);

/* Tsallis entropy (nats) of a distribution of n nonnegative entries
 * summing to 1 within 1e-9. */
qbell_status qbell_tsallis_entropy(const double* probs, size_t n, double q,
                                   double* out);

/* Validated joint distribution handle. cells is row-major with nx rows;
 * entries must be >= -1e-12 and sum to 1 within 1e-9. */
typedef struct qbell_joint qbell_joint;

qbell_status qbell_joint_create(const double* cells, size_t nx, size_t ny,
                                qbell_joint** out);
void qbell_joint_free(qbell_joint* joint);

qbell_status qbell_joint_conditional_entropy(const qbell_joint* joint,
                                             double q,
                                             qbell_direction direction,
                                             qbell_cond_form form,
                                             double* out);
qbell_status qbell_joint_entropy(const qbell_joint* joint, double q,
                                 double* out);
qbell_status qbell_joint_marginal_entropy(const qbell_joint* joint, double q,
                                          qbell_direction which,
                                          double* out);
qbell_status qbell_joint_mutual_information(const qbell_joint* joint, double q,
                                            double* out);

/* Information distance between X and Y. metric_regime_out (optional) is set
 * to 0 when q < 1, where the distance axioms are not guaranteed. */
qbell_status qbell_joint_metric(const qbell_joint* joint, double q,
                                qbell_metric kind, double* value_out,
                                int* metric_regime_out);

/* ------------------------------------------------------------------ */
/* scenario closed forms                                                */
/* ------------------------------------------------------------------ */

/* Conditional outcome matrix p(m'|m) for one jointly measured pair,
 * row-major over outcomes (+1,-1) or (+1,0,-1). out_cells must hold at
 * least 9 doubles; *dim_out receives 2 or 3. */
qbell_status qbell_pair_conditional(qbell_scenario scenario,
                                    qbell_pair_role role, double theta,
                                    double kappa, double* out_cells,
                                    size_t* dim_out);

/* Joint distribution p(m,m') = p(m'|m)/dim with the uniform marginal. */
qbell_status qbell_pair_joint(qbell_scenario scenario, qbell_pair_role role,
                              double theta, double kappa, double* out_cells,
                              size_t* dim_out);

/* ------------------------------------------------------------------ */
/* density-matrix oracle                                                */
/* ------------------------------------------------------------------ */

/* Two-qubit simulation of the CHSH run with an explicit flight timeline;
 * 2*gamma_dt1 + gamma_dt2 must equal kappa*theta/3. out_cells holds 4
 * doubles. Pass gamma_dt1 = gamma_dt2 = kappa*theta/9 for the reference
 * split, or use qbell_chsh_oracle_default. */
qbell_status qbell_chsh_oracle(double theta, double kappa,
                               qbell_pair_role role, double gamma_dt1,
                               double gamma_dt2, double* out_cells);
qbell_status qbell_chsh_oracle_default(double theta, double kappa,
                                       qbell_pair_role role,
                                       double* out_cells);

/* Leggett-Garg simulation; interval_multiplier 1 (adjacent) or 2
 * (end-to-end). Spin-1 supports only dephasing. out_cells holds 9 doubles,
 * *dim_out receives 2 or 3. */
qbell_status qbell_lg_oracle(qbell_lg_system system, qbell_lg_channel channel,
                             double theta, double kappa,
                             int interval_multiplier, double* out_cells,
                             size_t* dim_out);

/* Max |closed form - oracle| over a theta x kappa grid covering every pair
 * role of the scenario (theta in [0.01, pi], kappa in [0, kappa_max]). */
qbell_status qbell_validate_oracle(qbell_scenario scenario, size_t theta_steps,
                                   size_t kappa_steps, double kappa_max,
                                   double* max_abs_dev_out);

/* Pinned agreement tolerance: 1e-10 for qubit scenarios, 1e-8 for spin-1. */
double qbell_oracle_tolerance(qbell_scenario scenario);

/* ------------------------------------------------------------------ */
/* violation analysis                                                   */
/* ------------------------------------------------------------------ */

typedef struct qbell_search_config {
  double theta_min;              /* default 1e-3 */
  double theta_max;              /* default pi */
  int coarse_steps;              /* default 2000 */
  double refine_tolerance;       /* on theta, default 1e-6 */
  double positivity_epsilon;     /* default 1e-9 */
  double kappa_max;              /* threshold search bound, default 5.0 */
  double kappa_bisect_tolerance; /* default 1e-5 */
} qbell_search_config;

void qbell_search_config_default(qbell_search_config* cfg);

/* Violation quantity C_q(theta, kappa); positive values certify a
 * violation of the q-metric inequality for the scenario. */
qbell_status qbell_cq(qbell_scenario scenario, qbell_metric metric, double q,
                      double theta, double kappa, double* out);

/* S_q(kappa) = sup_theta C_q(theta, kappa) and its argmax. cfg may be NULL
 * for the defaults. */
qbell_status qbell_sq(qbell_scenario scenario, qbell_metric metric, double q,
                      double kappa, const qbell_search_config* cfg,
                      double* theta_star_out, double* s_value_out);

/* kappa_s(q) = sup{kappa >= 0 : S_q(kappa) > positivity_epsilon}. When
 * there is no violation at kappa = 0, *exists_out is set to 0 and
 * *kappa_s_out is left untouched. */
qbell_status qbell_kappa_threshold(qbell_scenario scenario,
                                   qbell_metric metric, double q,
                                   const qbell_search_config* cfg,
                                   int* exists_out, double* kappa_s_out);

typedef struct qbell_scan qbell_scan;

typedef struct qbell_scan_record {
  qbell_scenario scenario;
  qbell_metric metric;
  double q;
  double kappa;
  double theta_star;
  double s_value;
  int positive;
} qbell_scan_record;

/* One record per (q, kappa) pair, ordered by ascending (q, kappa). */
qbell_status qbell_scan_run(qbell_scenario scenario, qbell_metric metric,
                            const double* q_list, size_t nq,
                            const double* kappa_grid, size_t nk,
                            const qbell_search_config* cfg, qbell_scan** out);
size_t qbell_scan_size(const qbell_scan* scan);
qbell_status qbell_scan_get(const qbell_scan* scan, size_t index,
                            qbell_scan_record* out);
void qbell_scan_free(qbell_scan* scan);

#ifdef __cplusplus
}
#endif

#endif /* QBELL_H */
