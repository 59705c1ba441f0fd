#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "entropy.hpp"

namespace qbell {

// Physical setups whose pair distributions have closed forms:
//  - ChshDephasing: singlet pair, coplanar measurement directions at theta
//    and theta/3, both qubits phase-damped in flight.
//  - LgSpinHalf*: x-spin of a qubit measured at three equidistant times
//    under dephasing or depolarizing noise.
//  - LgSpinOneDephasing: the same protocol for a spin-1 (qutrit) system.
enum class Scenario {
  ChshDephasing,
  LgSpinHalfDephasing,
  LgSpinHalfDepolarizing,
  LgSpinOneDephasing,
};

// Which jointly measured pair a distribution belongs to. ChshAB separates
// the detectors by theta, ChshSmallAngle by theta/3 (three such pairs).
// LgAdjacent spans one time interval, LgEndToEnd spans two.
enum class PairRole { ChshAB, ChshSmallAngle, LgAdjacent, LgEndToEnd };

// theta: detector angle (CHSH) or omega * delta-tau (Leggett-Garg), radians.
// kappa: decoherence ratio, gamma*delta-t / (theta/3) for CHSH and
// gamma/omega for Leggett-Garg. Closed forms depend only on these products,
// so the ratio is baked in per scenario.
struct ScenarioSpec {
  Scenario scenario;
  double theta;
  double kappa;

  ScenarioSpec(Scenario scenario, double theta, double kappa);
};

// Conditional outcome matrix p(m'|m): rows index the conditioning outcome m.
// Rows sum to 1 within 1e-12 and the closed forms are symmetric in m, m'.
class ConditionalMatrix {
 public:
  ConditionalMatrix(std::size_t dim, const std::array<double, 9>& cells);

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t m_row, std::size_t mprime_col) const {
    return cells_[m_row * dim_ + mprime_col];
  }
  // Outcome labels in declared order: (+1, -1) or (+1, 0, -1).
  std::span<const int> outcome_labels() const;

 private:
  std::size_t dim_;
  std::array<double, 9> cells_;
};

// Closed-form conditional distribution for one jointly measured pair.
// Mismatched role/scenario combinations (Chsh* roles outside CHSH, Lg*
// roles outside Leggett-Garg) raise UsageError.
ConditionalMatrix pair_conditional(const ScenarioSpec& spec, PairRole role);

// p(m, m') = p(m) p(m'|m) with the uniform marginal p(m) = 1/dim; the
// result is a symmetric matrix.
JointDistribution pair_joint(const ScenarioSpec& spec, PairRole role);

std::string_view scenario_name(Scenario s);
std::optional<Scenario> scenario_from_name(std::string_view name);
std::string_view metric_kind_name(MetricKind kind);
std::optional<MetricKind> metric_kind_from_name(std::string_view name);

}  // namespace qbell
