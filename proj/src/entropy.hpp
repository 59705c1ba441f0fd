#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qbell {

// Entropic order q > 0. All entropies are in nats. Orders within 1e-9 of 1
// dispatch to the Shannon branch instead of evaluating (xi^(1-q) - 1)/(1-q),
// which cancels catastrophically near q = 1.
class EntropyOrder {
 public:
  explicit EntropyOrder(double q);

  double value() const { return q_; }
  bool shannon() const { return shannon_; }

 private:
  double q_;
  bool shannon_;
};

// Discrete distribution over a finite outcome alphabet. Construction
// validates (entries >= -1e-12, sum within 1e-9 of 1), clamps sub-rounding
// negatives to zero and renormalizes to an exact unit sum.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> probs,
                             std::vector<std::string> alphabet = {});

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }

 private:
  std::vector<double> probs_;
  std::vector<std::string> alphabet_;
};

// Joint distribution p(x, y), row-major with x indexing rows. Same
// validation and renormalization policy as ProbabilityVector.
class JointDistribution {
 public:
  JointDistribution(std::vector<double> cells, std::size_t nx, std::size_t ny,
                    std::vector<std::string> x_alphabet = {},
                    std::vector<std::string> y_alphabet = {});

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  double operator()(std::size_t x, std::size_t y) const {
    return cells_[x * ny_ + y];
  }
  std::span<const double> cells() const { return cells_; }
  const std::vector<std::string>& x_alphabet() const { return x_alphabet_; }
  const std::vector<std::string>& y_alphabet() const { return y_alphabet_; }

  ProbabilityVector x_marginal() const;  // row sums
  ProbabilityVector y_marginal() const;  // column sums
  // Cells are carried over verbatim, so transposing twice reproduces the
  // original bit for bit (this keeps metric(j) == metric(transpose(j))
  // exact).
  JointDistribution transposed() const;

 private:
  struct Validated {};
  JointDistribution(Validated, std::vector<double> cells, std::size_t nx,
                    std::size_t ny, std::vector<std::string> x_alphabet,
                    std::vector<std::string> y_alphabet);

  std::vector<double> cells_;
  std::size_t nx_;
  std::size_t ny_;
  std::vector<std::string> x_alphabet_;
  std::vector<std::string> y_alphabet_;
};

enum class Direction { XGivenY, YGivenX };

// The two information distances: DeltaQ sums the chain-rule conditional
// entropies, DTildeQ sums the linearly weighted ones.
enum class MetricKind { DeltaQ, DTildeQ };

struct MetricResult {
  double value = 0.0;
  // False when q < 1: the distance axioms are only guaranteed for q >= 1.
  bool metric_regime = true;
};

// Deformed logarithm ln_q(xi) = (xi^(1-q) - 1)/(1-q); ln(xi) at q = 1.
double q_log(double xi, EntropyOrder q);

// H_q(p) = (sum_x p(x)^q - 1)/(1 - q); Shannon entropy in nats at q = 1.
// Zero-probability outcomes contribute nothing.
double tsallis_entropy(const ProbabilityVector& p, EntropyOrder q);

// Chain-rule form: H_q(X|Y) = sum_y p(y)^q H_q(X|y). Satisfies
// H_q(X,Y) = H_q(Y|X) + H_q(X) for all q > 0. Zero-marginal conditioning
// outcomes are skipped.
double conditional_entropy_chain(const JointDistribution& j, EntropyOrder q,
                                 Direction direction);

// Averaged form: sum_y p(y) H_q(X|y). Does not obey the chain rule for
// q != 1 but still induces a metric for q >= 1.
double conditional_entropy_avg(const JointDistribution& j, EntropyOrder q,
                               Direction direction);

// Tsallis entropy of the flattened joint distribution.
double joint_entropy(const JointDistribution& j, EntropyOrder q);

// I_q(X;Y) = H_q(X) - H_q(X|Y), chain-rule conditional form. Equals
// H_q(Y) - H_q(Y|X) through the chain rule. Nonzero for independent
// variables when q != 1.
double mutual_information(const JointDistribution& j, EntropyOrder q);

// Symmetric information distance between X and Y. Always >= 0 and invariant
// under transposing the joint; zero exactly when the joint is supported on
// the graph of a bijection.
MetricResult metric(const JointDistribution& j, EntropyOrder q,
                    MetricKind kind);

}  // namespace qbell
