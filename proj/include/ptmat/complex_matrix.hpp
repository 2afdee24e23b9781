#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ptmat {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Tolerance used wherever a caller does not pass one.
inline constexpr double kDefaultTol = 1e-10;

/// Dense square complex matrix stored row-major.
///
/// This is the single carrier type for Hamiltonians, parity operators,
/// rotations, the C operator and weight matrices. Values are immutable in
/// spirit: every algorithm returns a new matrix rather than editing its input.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix of the given dimension.
  explicit ComplexMatrix(std::size_t dim);
  /// Takes ownership of `entries`, which must hold exactly dim*dim values.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  /// Matrix whose columns are the given vectors (all of length cols.size()).
  static ComplexMatrix from_columns(std::span<const ComplexVector> cols);

  std::size_t dim() const { return dim_; }
  std::span<const Complex> entries() const { return entries_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  ComplexVector column(std::size_t j) const;
  ComplexVector row(std::size_t i) const;

  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  ComplexMatrix adjoint() const;
  Complex trace() const;

  bool is_symmetric(double tol = kDefaultTol) const;
  bool is_hermitian(double tol = kDefaultTol) const;
  bool is_real(double tol = kDefaultTol) const;
  bool is_orthogonal(double tol = kDefaultTol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

/// Standard matrix product. Throws InvalidArgument on a dimension mismatch.
ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector mat_vec(const ComplexMatrix& a, std::span<const Complex> v);

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);
ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v);

/// a*b - b*a
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entry magnitude.
double max_abs(const ComplexMatrix& m);
/// Induced infinity norm (largest absolute row sum).
double norm_inf(const ComplexMatrix& m);
double norm_fro(const ComplexMatrix& m);
/// Induced 1-norm (largest absolute column sum).
double norm_one(const ComplexMatrix& m);

/// Inverse by LU with partial pivoting. Throws SingularMatrixError on an exact zero pivot.
ComplexMatrix inverse(const ComplexMatrix& m);
/// 1-norm condition number, infinity when the matrix is singular.
double condition_number(const ComplexMatrix& m);

// Vector helpers. `dot` is the bilinear product u^T v with no conjugation;
// `hdot` is the Hermitian product u^H v.
Complex dot(std::span<const Complex> u, std::span<const Complex> v);
Complex hdot(std::span<const Complex> u, std::span<const Complex> v);
double norm2(std::span<const Complex> v);
ComplexVector conj(std::span<const Complex> v);
ComplexVector scaled(std::span<const Complex> v, Complex s);
ComplexVector add(std::span<const Complex> u, std::span<const Complex> v);
ComplexVector subtract(std::span<const Complex> u, std::span<const Complex> v);
/// Outer product u v^T (no conjugation).
ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v);

}  // namespace ptmat
