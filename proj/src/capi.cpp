// C API of the shared library: thin translation layer over the C++ core.
// Exceptions are caught at this boundary and mapped to status codes; the
// message is kept in a thread-local buffer for qbell_last_error().

#include "qbell.h"

#include <cmath>
#include <exception>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "entropy.hpp"
#include "oracle.hpp"
#include "scenarios.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const char* msg) { g_last_error = msg ? msg : ""; }

template <typename Fn>
qbell_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const qbell::UsageError& e) {
    set_error(e.what());
    return QBELL_ERR_USAGE;
  } catch (const qbell::ValidationError& e) {
    set_error(e.what());
    return QBELL_ERR_VALIDATION;
  } catch (const std::exception& e) {
    set_error(e.what());
    return QBELL_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return QBELL_ERR_INTERNAL;
  }
}

qbell_status null_pointer() {
  set_error("required pointer argument was NULL");
  return QBELL_ERR_NULL_POINTER;
}

qbell_status finite_out(double value, double* out) {
  if (!std::isfinite(value)) {
    set_error("computation produced a non-finite result");
    return QBELL_ERR_NUMERIC;
  }
  *out = value;
  return QBELL_OK;
}

qbell::Scenario to_scenario(qbell_scenario s) {
  switch (s) {
    case QBELL_SCENARIO_CHSH_DEPHASING: return qbell::Scenario::ChshDephasing;
    case QBELL_SCENARIO_LG_SPIN_HALF_DEPHASING:
      return qbell::Scenario::LgSpinHalfDephasing;
    case QBELL_SCENARIO_LG_SPIN_HALF_DEPOLARIZING:
      return qbell::Scenario::LgSpinHalfDepolarizing;
    case QBELL_SCENARIO_LG_SPIN_ONE_DEPHASING:
      return qbell::Scenario::LgSpinOneDephasing;
  }
  throw qbell::UsageError("invalid scenario enum value");
}

qbell::MetricKind to_metric(qbell_metric m) {
  switch (m) {
    case QBELL_METRIC_DELTA: return qbell::MetricKind::DeltaQ;
    case QBELL_METRIC_DTILDE: return qbell::MetricKind::DTildeQ;
  }
  throw qbell::UsageError("invalid metric enum value");
}

qbell::PairRole to_role(qbell_pair_role r) {
  switch (r) {
    case QBELL_ROLE_CHSH_AB: return qbell::PairRole::ChshAB;
    case QBELL_ROLE_CHSH_SMALL_ANGLE: return qbell::PairRole::ChshSmallAngle;
    case QBELL_ROLE_LG_ADJACENT: return qbell::PairRole::LgAdjacent;
    case QBELL_ROLE_LG_END_TO_END: return qbell::PairRole::LgEndToEnd;
  }
  throw qbell::UsageError("invalid pair role enum value");
}

qbell::Direction to_direction(qbell_direction d) {
  switch (d) {
    case QBELL_X_GIVEN_Y: return qbell::Direction::XGivenY;
    case QBELL_Y_GIVEN_X: return qbell::Direction::YGivenX;
  }
  throw qbell::UsageError("invalid direction enum value");
}

qbell::LgSystem to_lg_system(qbell_lg_system s) {
  switch (s) {
    case QBELL_LG_SPIN_HALF: return qbell::LgSystem::SpinHalf;
    case QBELL_LG_SPIN_ONE: return qbell::LgSystem::SpinOne;
  }
  throw qbell::UsageError("invalid spin system enum value");
}

qbell::LgChannel to_lg_channel(qbell_lg_channel c) {
  switch (c) {
    case QBELL_LG_DEPHASING: return qbell::LgChannel::Dephasing;
    case QBELL_LG_DEPOLARIZING: return qbell::LgChannel::Depolarizing;
  }
  throw qbell::UsageError("invalid channel enum value");
}

qbell::SearchConfig to_search_config(const qbell_search_config* cfg) {
  if (!cfg) return qbell::SearchConfig{};
  qbell::SearchConfig out;
  out.theta_min = cfg->theta_min;
  out.theta_max = cfg->theta_max;
  out.coarse_steps = cfg->coarse_steps;
  out.refine_tolerance = cfg->refine_tolerance;
  out.positivity_epsilon = cfg->positivity_epsilon;
  out.kappa_max = cfg->kappa_max;
  out.kappa_bisect_tolerance = cfg->kappa_bisect_tolerance;
  return out;
}

qbell_status copy_conditional(const qbell::ConditionalMatrix& m,
                              double* out_cells, size_t* dim_out) {
  const size_t d = m.dim();
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) out_cells[i * d + j] = m(i, j);
  if (dim_out) *dim_out = d;
  return QBELL_OK;
}

}  // namespace

struct qbell_joint {
  qbell::JointDistribution dist;
};

struct qbell_scan {
  std::vector<qbell::ScanRecord> records;
};

extern "C" {

const char* qbell_status_name(qbell_status status) {
  switch (status) {
    case QBELL_OK: return "ok";
    case QBELL_ERR_NULL_POINTER: return "null-pointer";
    case QBELL_ERR_USAGE: return "usage";
    case QBELL_ERR_VALIDATION: return "validation";
    case QBELL_ERR_NUMERIC: return "numeric";
    case QBELL_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* qbell_last_error(void) { return g_last_error.c_str(); }

const char* qbell_version(void) { return "0.1.0"; }

const char* qbell_scenario_name(qbell_scenario scenario) {
  try {
    return qbell::scenario_name(to_scenario(scenario)).data();
  } catch (...) {
    return "unknown";
  }
}

qbell_status qbell_scenario_parse(const char* name, qbell_scenario* out) {
  if (!name || !out) return null_pointer();
  return guarded([&] {
    const auto s = qbell::scenario_from_name(name);
    if (!s) throw qbell::UsageError(std::string("unknown scenario: ") + name);
    switch (*s) {
      case qbell::Scenario::ChshDephasing:
        *out = QBELL_SCENARIO_CHSH_DEPHASING;
        break;
      case qbell::Scenario::LgSpinHalfDephasing:
        *out = QBELL_SCENARIO_LG_SPIN_HALF_DEPHASING;
        break;
      case qbell::Scenario::LgSpinHalfDepolarizing:
        *out = QBELL_SCENARIO_LG_SPIN_HALF_DEPOLARIZING;
        break;
      case qbell::Scenario::LgSpinOneDephasing:
        *out = QBELL_SCENARIO_LG_SPIN_ONE_DEPHASING;
        break;
    }
    return QBELL_OK;
  });
}

const char* qbell_metric_name(qbell_metric metric) {
  try {
    return qbell::metric_kind_name(to_metric(metric)).data();
  } catch (...) {
    return "unknown";
  }
}

qbell_status qbell_metric_parse(const char* name, qbell_metric* out) {
  if (!name || !out) return null_pointer();
  return guarded([&] {
    const auto m = qbell::metric_kind_from_name(name);
    if (!m) throw qbell::UsageError(std::string("unknown metric: ") + name);
    *out = *m == qbell::MetricKind::DeltaQ ? QBELL_METRIC_DELTA
                                           : QBELL_METRIC_DTILDE;
    return QBELL_OK;
  });
}

/* ------------------------------------------------------------------ */

qbell_status qbell_q_log(double xi, double q, double* out) {
  if (!out) return null_pointer();
  return guarded([&] {
    return finite_out(qbell::q_log(xi, qbell::EntropyOrder(q)), out);
  });
}

qbell_status qbell_tsallis_entropy(const double* probs, size_t n, double q,
                                   double* out) {
  if (!probs || !out) return null_pointer();
  return guarded([&] {
    const qbell::ProbabilityVector p(std::vector<double>(probs, probs + n));
    return finite_out(qbell::tsallis_entropy(p, qbell::EntropyOrder(q)), out);
  });
}

qbell_status qbell_joint_create(const double* cells, size_t nx, size_t ny,
                                qbell_joint** out) {
  if (!cells || !out) return null_pointer();
  return guarded([&] {
    auto* j = new qbell_joint{qbell::JointDistribution(
        std::vector<double>(cells, cells + nx * ny), nx, ny)};
    *out = j;
    return QBELL_OK;
  });
}

void qbell_joint_free(qbell_joint* joint) { delete joint; }

qbell_status qbell_joint_conditional_entropy(const qbell_joint* joint,
                                             double q,
                                             qbell_direction direction,
                                             qbell_cond_form form,
                                             double* out) {
  if (!joint || !out) return null_pointer();
  return guarded([&] {
    const qbell::EntropyOrder order(q);
    const qbell::Direction dir = to_direction(direction);
    double v;
    if (form == QBELL_COND_CHAIN)
      v = qbell::conditional_entropy_chain(joint->dist, order, dir);
    else if (form == QBELL_COND_AVERAGE)
      v = qbell::conditional_entropy_avg(joint->dist, order, dir);
    else
      throw qbell::UsageError("invalid conditional form enum value");
    return finite_out(v, out);
  });
}

qbell_status qbell_joint_entropy(const qbell_joint* joint, double q,
                                 double* out) {
  if (!joint || !out) return null_pointer();
  return guarded([&] {
    return finite_out(qbell::joint_entropy(joint->dist, qbell::EntropyOrder(q)),
                      out);
  });
}

qbell_status qbell_joint_marginal_entropy(const qbell_joint* joint, double q,
                                          qbell_direction which, double* out) {
  if (!joint || !out) return null_pointer();
  return guarded([&] {
    const qbell::ProbabilityVector m = to_direction(which) ==
                                               qbell::Direction::XGivenY
                                           ? joint->dist.x_marginal()
                                           : joint->dist.y_marginal();
    return finite_out(qbell::tsallis_entropy(m, qbell::EntropyOrder(q)), out);
  });
}

qbell_status qbell_joint_mutual_information(const qbell_joint* joint, double q,
                                            double* out) {
  if (!joint || !out) return null_pointer();
  return guarded([&] {
    return finite_out(
        qbell::mutual_information(joint->dist, qbell::EntropyOrder(q)), out);
  });
}

qbell_status qbell_joint_metric(const qbell_joint* joint, double q,
                                qbell_metric kind, double* value_out,
                                int* metric_regime_out) {
  if (!joint || !value_out) return null_pointer();
  return guarded([&] {
    const qbell::MetricResult r =
        qbell::metric(joint->dist, qbell::EntropyOrder(q), to_metric(kind));
    if (metric_regime_out) *metric_regime_out = r.metric_regime ? 1 : 0;
    return finite_out(r.value, value_out);
  });
}

/* ------------------------------------------------------------------ */

qbell_status qbell_pair_conditional(qbell_scenario scenario,
                                    qbell_pair_role role, double theta,
                                    double kappa, double* out_cells,
                                    size_t* dim_out) {
  if (!out_cells) return null_pointer();
  return guarded([&] {
    const qbell::ScenarioSpec spec(to_scenario(scenario), theta, kappa);
    return copy_conditional(qbell::pair_conditional(spec, to_role(role)),
                            out_cells, dim_out);
  });
}

qbell_status qbell_pair_joint(qbell_scenario scenario, qbell_pair_role role,
                              double theta, double kappa, double* out_cells,
                              size_t* dim_out) {
  if (!out_cells) return null_pointer();
  return guarded([&] {
    const qbell::ScenarioSpec spec(to_scenario(scenario), theta, kappa);
    const qbell::JointDistribution j = qbell::pair_joint(spec, to_role(role));
    for (size_t x = 0; x < j.nx(); ++x)
      for (size_t y = 0; y < j.ny(); ++y) out_cells[x * j.ny() + y] = j(x, y);
    if (dim_out) *dim_out = j.nx();
    return QBELL_OK;
  });
}

/* ------------------------------------------------------------------ */

qbell_status qbell_chsh_oracle(double theta, double kappa,
                               qbell_pair_role role, double gamma_dt1,
                               double gamma_dt2, double* out_cells) {
  if (!out_cells) return null_pointer();
  return guarded([&] {
    const qbell::ConditionalMatrix m = qbell::chsh_conditional_oracle(
        theta, kappa, to_role(role), qbell::ChshTimeline{gamma_dt1, gamma_dt2});
    return copy_conditional(m, out_cells, nullptr);
  });
}

qbell_status qbell_chsh_oracle_default(double theta, double kappa,
                                       qbell_pair_role role,
                                       double* out_cells) {
  if (!out_cells) return null_pointer();
  return guarded([&] {
    const qbell::ConditionalMatrix m = qbell::chsh_conditional_oracle(
        theta, kappa, to_role(role),
        qbell::ChshTimeline::even_split(theta, kappa));
    return copy_conditional(m, out_cells, nullptr);
  });
}

qbell_status qbell_lg_oracle(qbell_lg_system system, qbell_lg_channel channel,
                             double theta, double kappa,
                             int interval_multiplier, double* out_cells,
                             size_t* dim_out) {
  if (!out_cells) return null_pointer();
  return guarded([&] {
    const qbell::ConditionalMatrix m = qbell::lg_conditional_oracle(
        to_lg_system(system), to_lg_channel(channel), theta, kappa,
        interval_multiplier);
    return copy_conditional(m, out_cells, dim_out);
  });
}

qbell_status qbell_validate_oracle(qbell_scenario scenario, size_t theta_steps,
                                   size_t kappa_steps, double kappa_max,
                                   double* max_abs_dev_out) {
  if (!max_abs_dev_out) return null_pointer();
  return guarded([&] {
    return finite_out(qbell::oracle_max_deviation(to_scenario(scenario),
                                                  theta_steps, kappa_steps,
                                                  kappa_max),
                      max_abs_dev_out);
  });
}

double qbell_oracle_tolerance(qbell_scenario scenario) {
  try {
    return qbell::oracle_tolerance(to_scenario(scenario));
  } catch (...) {
    return 0.0;
  }
}

/* ------------------------------------------------------------------ */

void qbell_search_config_default(qbell_search_config* cfg) {
  if (!cfg) return;
  const qbell::SearchConfig d;
  cfg->theta_min = d.theta_min;
  cfg->theta_max = d.theta_max;
  cfg->coarse_steps = d.coarse_steps;
  cfg->refine_tolerance = d.refine_tolerance;
  cfg->positivity_epsilon = d.positivity_epsilon;
  cfg->kappa_max = d.kappa_max;
  cfg->kappa_bisect_tolerance = d.kappa_bisect_tolerance;
}

qbell_status qbell_cq(qbell_scenario scenario, qbell_metric metric, double q,
                      double theta, double kappa, double* out) {
  if (!out) return null_pointer();
  return guarded([&] {
    const qbell::ScenarioSpec spec(to_scenario(scenario), theta, kappa);
    return finite_out(
        qbell::c_q(spec, to_metric(metric), qbell::EntropyOrder(q)), out);
  });
}

qbell_status qbell_sq(qbell_scenario scenario, qbell_metric metric, double q,
                      double kappa, const qbell_search_config* cfg,
                      double* theta_star_out, double* s_value_out) {
  if (!theta_star_out || !s_value_out) return null_pointer();
  return guarded([&] {
    const qbell::SupremumResult r =
        qbell::s_q(to_scenario(scenario), to_metric(metric),
                   qbell::EntropyOrder(q), kappa, to_search_config(cfg));
    *theta_star_out = r.theta_star;
    return finite_out(r.s_value, s_value_out);
  });
}

qbell_status qbell_kappa_threshold(qbell_scenario scenario,
                                   qbell_metric metric, double q,
                                   const qbell_search_config* cfg,
                                   int* exists_out, double* kappa_s_out) {
  if (!exists_out || !kappa_s_out) return null_pointer();
  return guarded([&] {
    const auto r =
        qbell::kappa_threshold(to_scenario(scenario), to_metric(metric),
                               qbell::EntropyOrder(q), to_search_config(cfg));
    *exists_out = r.has_value() ? 1 : 0;
    if (r) return finite_out(*r, kappa_s_out);
    return QBELL_OK;
  });
}

qbell_status qbell_scan_run(qbell_scenario scenario, qbell_metric metric,
                            const double* q_list, size_t nq,
                            const double* kappa_grid, size_t nk,
                            const qbell_search_config* cfg, qbell_scan** out) {
  if (!q_list || !kappa_grid || !out) return null_pointer();
  return guarded([&] {
    auto records = qbell::scan(to_scenario(scenario), to_metric(metric),
                               std::vector<double>(q_list, q_list + nq),
                               std::vector<double>(kappa_grid, kappa_grid + nk),
                               to_search_config(cfg));
    *out = new qbell_scan{std::move(records)};
    return QBELL_OK;
  });
}

size_t qbell_scan_size(const qbell_scan* scan) {
  return scan ? scan->records.size() : 0;
}

qbell_status qbell_scan_get(const qbell_scan* scan, size_t index,
                            qbell_scan_record* out) {
  if (!scan || !out) return null_pointer();
  if (index >= scan->records.size()) {
    set_error("scan record index out of range");
    return QBELL_ERR_USAGE;
  }
  const qbell::ScanRecord& r = scan->records[index];
  switch (r.scenario) {
    case qbell::Scenario::ChshDephasing:
      out->scenario = QBELL_SCENARIO_CHSH_DEPHASING;
      break;
    case qbell::Scenario::LgSpinHalfDephasing:
      out->scenario = QBELL_SCENARIO_LG_SPIN_HALF_DEPHASING;
      break;
    case qbell::Scenario::LgSpinHalfDepolarizing:
      out->scenario = QBELL_SCENARIO_LG_SPIN_HALF_DEPOLARIZING;
      break;
    case qbell::Scenario::LgSpinOneDephasing:
      out->scenario = QBELL_SCENARIO_LG_SPIN_ONE_DEPHASING;
      break;
  }
  out->metric = r.metric == qbell::MetricKind::DeltaQ ? QBELL_METRIC_DELTA
                                                      : QBELL_METRIC_DTILDE;
  out->q = r.q;
  out->kappa = r.kappa;
  out->theta_star = r.theta_star;
  out->s_value = r.s_value;
  out->positive = r.positive ? 1 : 0;
  return QBELL_OK;
}

void qbell_scan_free(qbell_scan* scan) { delete scan; }

}  // extern "C"
