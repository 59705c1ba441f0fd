#pragma once

#include <numbers>
#include <optional>
#include <vector>

#include "scenarios.hpp"

namespace qbell {

// Knobs for the theta supremum and the kappa threshold searches.
struct SearchConfig {
  double theta_min = 1e-3;
  double theta_max = std::numbers::pi;
  int coarse_steps = 2000;
  double refine_tolerance = 1e-6;     // on theta
  double positivity_epsilon = 1e-9;   // "strictly positive" cutoff
  double kappa_max = 5.0;             // threshold search upper bound
  double kappa_bisect_tolerance = 1e-5;

  void validate() const;
};

struct SupremumResult {
  double theta_star;
  double s_value;
};

// One scan row; positive <=> s_value > positivity_epsilon.
struct ScanRecord {
  Scenario scenario;
  MetricKind metric;
  double q;
  double kappa;
  double theta_star;
  double s_value;
  bool positive;
};

// Violation quantity: the distance between the end observables minus the
// distances along the chain. CHSH: D(A,B) - D(A,B') - D(B',A') - D(A',B),
// one theta pair against three theta/3 pairs. Leggett-Garg:
// D(X,X'') - 2 D(X,X') (the two adjacent pairs share one closed form).
// Positive values violate the corresponding triangle-principle bound.
double c_q(const ScenarioSpec& spec, MetricKind kind, EntropyOrder q);

// S_q(kappa) = sup_theta C_q(theta, kappa) via a coarse grid plus
// golden-section refinement around the best grid point. Deterministic for a
// fixed config; the refined value never falls below the coarse maximum.
SupremumResult s_q(Scenario scenario, MetricKind kind, EntropyOrder q,
                   double kappa, const SearchConfig& cfg = {});

// kappa_s(q) = sup{kappa >= 0 : S_q(kappa) > positivity_epsilon}, found by
// walking a coarse kappa grid to bracket the sign change and bisecting.
// Returns nullopt when there is no violation at kappa = 0.
std::optional<double> kappa_threshold(Scenario scenario, MetricKind kind,
                                      EntropyOrder q,
                                      const SearchConfig& cfg = {});

// One record per (q, kappa), ordered by ascending (q, kappa).
std::vector<ScanRecord> scan(Scenario scenario, MetricKind kind,
                             std::vector<double> q_list,
                             std::vector<double> kappa_grid,
                             const SearchConfig& cfg = {});

}  // namespace qbell
