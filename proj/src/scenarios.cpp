#include "scenarios.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace qbell {

namespace {

constexpr double kRowSumTolerance = 1e-12;

constexpr std::array<int, 2> kDichotomicLabels = {+1, -1};
constexpr std::array<int, 3> kTrichotomicLabels = {+1, 0, -1};

bool is_chsh_role(PairRole role) {
  return role == PairRole::ChshAB || role == PairRole::ChshSmallAngle;
}

// p(m'|m) = (1 + sign * m'm * decay * cos(angle)) / 2 over outcomes (+1,-1).
// CHSH uses sign = -1 (singlet anticorrelation), Leggett-Garg sign = +1.
std::array<double, 9> dichotomic_cells(double sign, double decay, double angle) {
  std::array<double, 9> c{};
  const double t = sign * decay * std::cos(angle);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const int m = kDichotomicLabels[i];
      const int mp = kDichotomicLabels[j];
      c[i * 2 + j] = (1.0 + m * mp * t) / 2.0;
    }
  }
  return c;
}

// Spin-1 dephasing conditionals over (+1, 0, -1); gamma_dt and angle are the
// per-interval products gamma*dt and omega*dt.
std::array<double, 9> spin_one_cells(double gamma_dt, double angle) {
  const double e1 = std::exp(-gamma_dt);
  const double e4 = std::exp(-4.0 * gamma_dt);
  const double c1 = std::cos(angle);
  const double c2 = std::cos(2.0 * angle);
  std::array<double, 9> c{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const int m = kTrichotomicLabels[i];
      const int mp = kTrichotomicLabels[j];
      double p;
      if (m != 0 && mp != 0) {
        p = 3.0 / 8.0 + (m * mp / 2.0) * e1 * c1 + (1.0 / 8.0) * e4 * c2;
      } else if (m == 0 && mp == 0) {
        p = (1.0 + e4 * c2) / 2.0;
      } else {
        p = (1.0 - e4 * c2) / 4.0;
      }
      c[i * 3 + j] = p;
    }
  }
  return c;
}

}  // namespace

ScenarioSpec::ScenarioSpec(Scenario scenario, double theta, double kappa)
    : scenario(scenario), theta(theta), kappa(kappa) {
  if (!std::isfinite(theta) || theta <= 0.0)
    throw ValidationError("scenario: theta must be positive and finite");
  if (!std::isfinite(kappa) || kappa < 0.0)
    throw ValidationError("scenario: kappa must be nonnegative and finite");
}

ConditionalMatrix::ConditionalMatrix(std::size_t dim,
                                     const std::array<double, 9>& cells)
    : dim_(dim), cells_(cells) {
  if (dim_ != 2 && dim_ != 3)
    throw ValidationError("conditional matrix: dimension must be 2 or 3");
  for (std::size_t i = 0; i < dim_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      double& p = cells_[i * dim_ + j];
      if (p < -kRowSumTolerance || p > 1.0 + kRowSumTolerance)
        throw ValidationError("conditional matrix: entry outside [0, 1]");
      if (p < 0.0) p = 0.0;
      if (p > 1.0) p = 1.0;
      row += p;
    }
    if (std::abs(row - 1.0) > kRowSumTolerance)
      throw ValidationError("conditional matrix: row does not sum to 1");
  }
}

std::span<const int> ConditionalMatrix::outcome_labels() const {
  if (dim_ == 2) return kDichotomicLabels;
  return kTrichotomicLabels;
}

ConditionalMatrix pair_conditional(const ScenarioSpec& spec, PairRole role) {
  const bool chsh = spec.scenario == Scenario::ChshDephasing;
  if (chsh != is_chsh_role(role))
    throw UsageError("pair role does not belong to the requested scenario");

  switch (spec.scenario) {
    case Scenario::ChshDephasing: {
      // Decay exponent gamma*dt = kappa*theta/3 for every pair; only the
      // angle differs between the AB pair and the three theta/3 pairs.
      const double decay = std::exp(-spec.kappa * spec.theta / 3.0);
      const double angle =
          role == PairRole::ChshAB ? spec.theta : spec.theta / 3.0;
      return ConditionalMatrix(2, dichotomic_cells(-1.0, decay, angle));
    }
    case Scenario::LgSpinHalfDephasing:
    case Scenario::LgSpinHalfDepolarizing: {
      const double mult = role == PairRole::LgAdjacent ? 1.0 : 2.0;
      // Depolarizing shrinks the whole Bloch vector at four times the
      // dephasing rate of its horizontal components.
      const double rate =
          spec.scenario == Scenario::LgSpinHalfDepolarizing ? 4.0 : 1.0;
      const double decay = std::exp(-rate * spec.kappa * mult * spec.theta);
      return ConditionalMatrix(2,
                               dichotomic_cells(+1.0, decay, mult * spec.theta));
    }
    case Scenario::LgSpinOneDephasing: {
      const double mult = role == PairRole::LgAdjacent ? 1.0 : 2.0;
      return ConditionalMatrix(
          3, spin_one_cells(spec.kappa * mult * spec.theta, mult * spec.theta));
    }
  }
  throw UsageError("unknown scenario");
}

JointDistribution pair_joint(const ScenarioSpec& spec, PairRole role) {
  const ConditionalMatrix cond = pair_conditional(spec, role);
  const std::size_t d = cond.dim();
  std::vector<double> cells(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) cells[i * d + j] = cond(i, j) / d;

  std::vector<std::string> labels(d);
  for (std::size_t i = 0; i < d; ++i)
    labels[i] = std::to_string(cond.outcome_labels()[i]);
  return JointDistribution(std::move(cells), d, d, labels, labels);
}

std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::ChshDephasing: return "chsh-dephasing";
    case Scenario::LgSpinHalfDephasing: return "lg-spin-half-dephasing";
    case Scenario::LgSpinHalfDepolarizing: return "lg-spin-half-depolarizing";
    case Scenario::LgSpinOneDephasing: return "lg-spin-one-dephasing";
  }
  return "unknown";
}

std::optional<Scenario> scenario_from_name(std::string_view name) {
  if (name == "chsh-dephasing") return Scenario::ChshDephasing;
  if (name == "lg-spin-half-dephasing") return Scenario::LgSpinHalfDephasing;
  if (name == "lg-spin-half-depolarizing") return Scenario::LgSpinHalfDepolarizing;
  if (name == "lg-spin-one-dephasing") return Scenario::LgSpinOneDephasing;
  return std::nullopt;
}

std::string_view metric_kind_name(MetricKind kind) {
  return kind == MetricKind::DeltaQ ? "delta" : "dtilde";
}

std::optional<MetricKind> metric_kind_from_name(std::string_view name) {
  if (name == "delta") return MetricKind::DeltaQ;
  if (name == "dtilde") return MetricKind::DTildeQ;
  return std::nullopt;
}

}  // namespace qbell
