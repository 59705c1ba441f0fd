#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qbell {

// Dense complex matrix with value semantics, dimension 2..4. Sized for the
// density-matrix oracle: single qubit/qutrit states and one two-qubit state.
class CMatrix {
 public:
  using value_type = std::complex<double>;
  static constexpr std::size_t kMaxDim = 4;

  explicit CMatrix(std::size_t dim);
  static CMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  value_type& operator()(std::size_t i, std::size_t j) {
    return a_[i * dim_ + j];
  }
  const value_type& operator()(std::size_t i, std::size_t j) const {
    return a_[i * dim_ + j];
  }

  CMatrix adjoint() const;
  value_type trace() const;
  double max_hermiticity_defect() const;  // max_ij |a(i,j) - conj(a(j,i))|

  // Eigenvalues of a Hermitian matrix, ascending. Jacobi iteration on the
  // 2d x 2d real symmetric embedding [[Re, -Im], [Im, Re]].
  std::vector<double> hermitian_eigenvalues() const;

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(value_type scalar);
  friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
  friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
  friend CMatrix operator*(CMatrix lhs, value_type scalar) { return lhs *= scalar; }
  friend CMatrix operator*(value_type scalar, CMatrix rhs) { return rhs *= scalar; }
  friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);

 private:
  std::size_t dim_;
  std::array<value_type, kMaxDim * kMaxDim> a_;
};

// Rank-one projector |v><v| from a (normalized) state vector.
CMatrix outer(std::span<const std::complex<double>> v);

// Kronecker product of two qubit-sized matrices (2x2 (x) 2x2 -> 4x4).
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Partial trace over the first qubit of a two-qubit matrix (4x4 -> 2x2).
CMatrix partial_trace_first(const CMatrix& ab);

}  // namespace qbell
