#include "cmatrix.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace qbell {

CMatrix::CMatrix(std::size_t dim) : dim_(dim), a_{} {
  if (dim < 2 || dim > kMaxDim)
    throw ValidationError("complex matrix: dimension must be 2..4");
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      out(i, j) = std::conj((*this)(j, i));
  return out;
}

CMatrix::value_type CMatrix::trace() const {
  value_type t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      worst = std::max(worst,
                       std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  if (rhs.dim_ != dim_) throw ValidationError("complex matrix: dimension mismatch");
  for (std::size_t k = 0; k < dim_ * dim_; ++k) a_[k] += rhs.a_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  if (rhs.dim_ != dim_) throw ValidationError("complex matrix: dimension mismatch");
  for (std::size_t k = 0; k < dim_ * dim_; ++k) a_[k] -= rhs.a_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(value_type scalar) {
  for (std::size_t k = 0; k < dim_ * dim_; ++k) a_[k] *= scalar;
  return *this;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.dim_ != rhs.dim_)
    throw ValidationError("complex matrix: dimension mismatch");
  CMatrix out(lhs.dim_);
  for (std::size_t i = 0; i < lhs.dim_; ++i)
    for (std::size_t k = 0; k < lhs.dim_; ++k) {
      const CMatrix::value_type v = lhs(i, k);
      if (v == CMatrix::value_type{}) continue;
      for (std::size_t j = 0; j < lhs.dim_; ++j) out(i, j) += v * rhs(k, j);
    }
  return out;
}

std::vector<double> CMatrix::hermitian_eigenvalues() const {
  const std::size_t d = dim_;
  const std::size_t n = 2 * d;
  std::array<double, 2 * kMaxDim * 2 * kMaxDim> s{};
  auto at = [&](std::size_t i, std::size_t j) -> double& { return s[i * n + j]; };

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const value_type v = (*this)(i, j);
      at(i, j) = v.real();
      at(i, j + d) = -v.imag();
      at(i + d, j) = v.imag();
      at(i + d, j + d) = v.real();
    }

  // Cyclic Jacobi sweeps; n <= 8 so convergence is quick.
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    if (off < 1e-30) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double tau = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - sn * akq;
          at(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - sn * aqk;
          at(q, k) = sn * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = at(i, i);
  std::sort(all.begin(), all.end());
  // Each eigenvalue of the complex matrix appears twice in the embedding.
  std::vector<double> out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = all[2 * i];
  return out;
}

CMatrix outer(std::span<const std::complex<double>> v) {
  CMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2)
    throw ValidationError("kron: only 2x2 factors are supported");
  CMatrix out(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

CMatrix partial_trace_first(const CMatrix& ab) {
  if (ab.dim() != 4)
    throw ValidationError("partial trace: expected a two-qubit (4x4) matrix");
  CMatrix out(2);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l)
      out(k, l) = ab(0 + k, 0 + l) + ab(2 + k, 2 + l);
  return out;
}

}  // namespace qbell
