#include "entropy.hpp"

#include <cmath>
#include <utility>

namespace qbell {

namespace {

constexpr double kShannonWindow = 1e-9;   // |q - 1| below this is Shannon
constexpr double kSumTolerance = 1e-9;    // distribution sums must be this close to 1
constexpr double kNegativeFloor = -1e-12; // entries below this are rejected

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::to_string(i);
  return out;
}

// Shared validation: clamp sub-rounding negatives, check the unit sum,
// renormalize in place.
void validate_and_normalize(std::vector<double>& w, const char* what) {
  if (w.empty()) throw ValidationError(std::string(what) + ": empty distribution");
  double sum = 0.0;
  for (double& v : w) {
    if (!std::isfinite(v)) throw ValidationError(std::string(what) + ": non-finite entry");
    if (v < kNegativeFloor)
      throw ValidationError(std::string(what) + ": negative entry " + std::to_string(v));
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw ValidationError(std::string(what) + ": entries sum to " + std::to_string(sum) +
                          ", expected 1 within 1e-9");
  for (double& v : w) v /= sum;
}

double tsallis_of_span(std::span<const double> p, const EntropyOrder& q) {
  if (q.shannon()) {
    double h = 0.0;
    for (double v : p)
      if (v > 0.0) h -= v * std::log(v);
    return h;
  }
  double s = 0.0;
  for (double v : p)
    if (v > 0.0) s += std::pow(v, q.value());
  return (s - 1.0) / (1.0 - q.value());
}

// H_q(X|Y) over columns of j, weighted by p(y)^q (chain form) or p(y)
// (averaged form). Both forms coincide on the Shannon branch.
double conditional_on_columns(const JointDistribution& j, const EntropyOrder& q,
                              bool chain_weights) {
  const std::size_t nx = j.nx();
  const std::size_t ny = j.ny();
  double acc = 0.0;
  for (std::size_t y = 0; y < ny; ++y) {
    double py = 0.0;
    for (std::size_t x = 0; x < nx; ++x) py += j(x, y);
    if (py <= 0.0) continue;  // zero-weight conditioning outcome

    double h;
    if (q.shannon()) {
      h = 0.0;
      for (std::size_t x = 0; x < nx; ++x) {
        const double c = j(x, y);
        if (c > 0.0) {
          const double pxy = c / py;
          h -= pxy * std::log(pxy);
        }
      }
    } else {
      double s = 0.0;
      for (std::size_t x = 0; x < nx; ++x) {
        const double c = j(x, y);
        if (c > 0.0) s += std::pow(c / py, q.value());
      }
      h = (s - 1.0) / (1.0 - q.value());
    }

    const double w =
        (chain_weights && !q.shannon()) ? std::pow(py, q.value()) : py;
    acc += w * h;
  }
  return acc;
}

}  // namespace

EntropyOrder::EntropyOrder(double q) : q_(q) {
  if (!std::isfinite(q) || q <= 0.0)
    throw ValidationError("entropic order q must be positive and finite");
  shannon_ = std::abs(q - 1.0) < kShannonWindow;
}

ProbabilityVector::ProbabilityVector(std::vector<double> probs,
                                     std::vector<std::string> alphabet)
    : probs_(std::move(probs)), alphabet_(std::move(alphabet)) {
  validate_and_normalize(probs_, "probability vector");
  if (alphabet_.empty()) alphabet_ = default_labels(probs_.size());
  if (alphabet_.size() != probs_.size())
    throw ValidationError("alphabet size does not match distribution size");
}

JointDistribution::JointDistribution(std::vector<double> cells, std::size_t nx,
                                     std::size_t ny,
                                     std::vector<std::string> x_alphabet,
                                     std::vector<std::string> y_alphabet)
    : cells_(std::move(cells)),
      nx_(nx),
      ny_(ny),
      x_alphabet_(std::move(x_alphabet)),
      y_alphabet_(std::move(y_alphabet)) {
  if (nx_ == 0 || ny_ == 0 || cells_.size() != nx_ * ny_)
    throw ValidationError("joint distribution: cell count does not match shape");
  validate_and_normalize(cells_, "joint distribution");
  if (x_alphabet_.empty()) x_alphabet_ = default_labels(nx_);
  if (y_alphabet_.empty()) y_alphabet_ = default_labels(ny_);
  if (x_alphabet_.size() != nx_ || y_alphabet_.size() != ny_)
    throw ValidationError("joint distribution: alphabet sizes do not match shape");
}

ProbabilityVector JointDistribution::x_marginal() const {
  std::vector<double> m(nx_, 0.0);
  for (std::size_t x = 0; x < nx_; ++x)
    for (std::size_t y = 0; y < ny_; ++y) m[x] += (*this)(x, y);
  return ProbabilityVector(std::move(m), x_alphabet_);
}

ProbabilityVector JointDistribution::y_marginal() const {
  std::vector<double> m(ny_, 0.0);
  for (std::size_t y = 0; y < ny_; ++y)
    for (std::size_t x = 0; x < nx_; ++x) m[y] += (*this)(x, y);
  return ProbabilityVector(std::move(m), y_alphabet_);
}

JointDistribution::JointDistribution(Validated, std::vector<double> cells,
                                     std::size_t nx, std::size_t ny,
                                     std::vector<std::string> x_alphabet,
                                     std::vector<std::string> y_alphabet)
    : cells_(std::move(cells)),
      nx_(nx),
      ny_(ny),
      x_alphabet_(std::move(x_alphabet)),
      y_alphabet_(std::move(y_alphabet)) {}

JointDistribution JointDistribution::transposed() const {
  std::vector<double> t(cells_.size());
  for (std::size_t x = 0; x < nx_; ++x)
    for (std::size_t y = 0; y < ny_; ++y) t[y * nx_ + x] = (*this)(x, y);
  return JointDistribution(Validated{}, std::move(t), ny_, nx_, y_alphabet_,
                           x_alphabet_);
}

double q_log(double xi, EntropyOrder q) {
  if (!std::isfinite(xi) || xi <= 0.0)
    throw ValidationError("q_log: argument must be positive and finite");
  if (q.shannon()) return std::log(xi);
  return (std::pow(xi, 1.0 - q.value()) - 1.0) / (1.0 - q.value());
}

double tsallis_entropy(const ProbabilityVector& p, EntropyOrder q) {
  return tsallis_of_span(p.probs(), q);
}

double conditional_entropy_chain(const JointDistribution& j, EntropyOrder q,
                                 Direction direction) {
  return direction == Direction::XGivenY
             ? conditional_on_columns(j, q, true)
             : conditional_on_columns(j.transposed(), q, true);
}

double conditional_entropy_avg(const JointDistribution& j, EntropyOrder q,
                               Direction direction) {
  return direction == Direction::XGivenY
             ? conditional_on_columns(j, q, false)
             : conditional_on_columns(j.transposed(), q, false);
}

double joint_entropy(const JointDistribution& j, EntropyOrder q) {
  return tsallis_of_span(j.cells(), q);
}

double mutual_information(const JointDistribution& j, EntropyOrder q) {
  return tsallis_entropy(j.x_marginal(), q) -
         conditional_entropy_chain(j, q, Direction::XGivenY);
}

MetricResult metric(const JointDistribution& j, EntropyOrder q,
                    MetricKind kind) {
  const bool chain = kind == MetricKind::DeltaQ;
  const double d = conditional_on_columns(j, q, chain) +
                   conditional_on_columns(j.transposed(), q, chain);
  return MetricResult{d, q.shannon() || q.value() >= 1.0};
}

}  // namespace qbell
