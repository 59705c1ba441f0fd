#include "analysis.hpp"

#include <algorithm>
#include <cmath>

namespace qbell {

namespace {

// Bracketing resolution for the kappa threshold walk.
constexpr int kKappaBracketSteps = 50;

double pair_distance(const ScenarioSpec& spec, PairRole role, MetricKind kind,
                     EntropyOrder q) {
  return metric(pair_joint(spec, role), q, kind).value;
}

}  // namespace

void SearchConfig::validate() const {
  if (!(theta_min > 0.0) || !(theta_max > theta_min))
    throw ValidationError("search config: need 0 < theta_min < theta_max");
  if (coarse_steps < 2)
    throw ValidationError("search config: coarse_steps must be at least 2");
  if (!(refine_tolerance > 0.0) || !(positivity_epsilon > 0.0) ||
      !(kappa_bisect_tolerance > 0.0))
    throw ValidationError("search config: tolerances must be positive");
  if (!(kappa_max > 0.0))
    throw ValidationError("search config: kappa_max must be positive");
}

double c_q(const ScenarioSpec& spec, MetricKind kind, EntropyOrder q) {
  if (spec.scenario == Scenario::ChshDephasing) {
    const double d_ab = pair_distance(spec, PairRole::ChshAB, kind, q);
    const double d_small =
        pair_distance(spec, PairRole::ChshSmallAngle, kind, q);
    return d_ab - 3.0 * d_small;
  }
  const double d_end = pair_distance(spec, PairRole::LgEndToEnd, kind, q);
  const double d_adj = pair_distance(spec, PairRole::LgAdjacent, kind, q);
  return d_end - 2.0 * d_adj;
}

SupremumResult s_q(Scenario scenario, MetricKind kind, EntropyOrder q,
                   double kappa, const SearchConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(kappa) || kappa < 0.0)
    throw ValidationError("s_q: kappa must be nonnegative and finite");

  const auto eval = [&](double theta) {
    return c_q(ScenarioSpec(scenario, theta, kappa), kind, q);
  };

  // Coarse pass.
  const int n = cfg.coarse_steps;
  const double span = cfg.theta_max - cfg.theta_min;
  double best_theta = cfg.theta_min;
  double best_value = eval(cfg.theta_min);
  int best_i = 0;
  for (int i = 1; i <= n; ++i) {
    const double theta = cfg.theta_min + span * i / n;
    const double v = eval(theta);
    if (v > best_value) {
      best_value = v;
      best_theta = theta;
      best_i = i;
    }
  }

  // Golden-section refinement inside the bracket around the best grid point.
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = cfg.theta_min + span * std::max(best_i - 1, 0) / n;
  double hi = cfg.theta_min + span * std::min(best_i + 1, n) / n;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = eval(x1);
  double f2 = eval(x2);
  while (hi - lo > cfg.refine_tolerance) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = eval(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = eval(x1);
    }
    const double x = f1 > f2 ? x1 : x2;
    const double f = f1 > f2 ? f1 : f2;
    if (f > best_value) {
      best_value = f;
      best_theta = x;
    }
  }
  return SupremumResult{best_theta, best_value};
}

std::optional<double> kappa_threshold(Scenario scenario, MetricKind kind,
                                      EntropyOrder q, const SearchConfig& cfg) {
  cfg.validate();
  const auto positive = [&](double kappa) {
    return s_q(scenario, kind, q, kappa, cfg).s_value > cfg.positivity_epsilon;
  };

  if (!positive(0.0)) return std::nullopt;  // no violation to lose

  // Walk a coarse grid to bracket the first sign change, then bisect.
  const double step = cfg.kappa_max / kKappaBracketSteps;
  double lo = 0.0;
  double hi = -1.0;
  for (int i = 1; i <= kKappaBracketSteps; ++i) {
    const double kappa = step * i;
    if (positive(kappa)) {
      lo = kappa;
    } else {
      hi = kappa;
      break;
    }
  }
  if (hi < 0.0)
    throw ValidationError(
        "kappa threshold: S_q still positive at kappa_max; raise kappa_max");

  while (hi - lo > cfg.kappa_bisect_tolerance) {
    const double mid = 0.5 * (lo + hi);
    (positive(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<ScanRecord> scan(Scenario scenario, MetricKind kind,
                             std::vector<double> q_list,
                             std::vector<double> kappa_grid,
                             const SearchConfig& cfg) {
  cfg.validate();
  if (q_list.empty() || kappa_grid.empty())
    throw ValidationError("scan: q list and kappa grid must be nonempty");
  std::sort(q_list.begin(), q_list.end());
  std::sort(kappa_grid.begin(), kappa_grid.end());

  std::vector<ScanRecord> records;
  records.reserve(q_list.size() * kappa_grid.size());
  for (double q : q_list) {
    const EntropyOrder order(q);
    for (double kappa : kappa_grid) {
      const SupremumResult r = s_q(scenario, kind, order, kappa, cfg);
      records.push_back(ScanRecord{scenario, kind, q, kappa, r.theta_star,
                                   r.s_value,
                                   r.s_value > cfg.positivity_epsilon});
    }
  }
  return records;
}

}  // namespace qbell
