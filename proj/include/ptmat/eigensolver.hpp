#pragma once

#include <cstddef>
#include <vector>

#include "ptmat/complex_matrix.hpp"

namespace ptmat {

struct EigenPair {
  Complex value;
  ComplexVector vector;  // unit 2-norm
  double residual = 0.0;  // ||m v - value v||_2
};

/// Eigenvector matrices worse conditioned than this are treated as defective.
inline constexpr double kMaxEigenbasisCondition = 1e8;

/// Relative radius (times the Frobenius norm) inside which eigenvalues form one cluster.
inline constexpr double kClusterRadius = 1e-8;

/// Full eigendecomposition of a general complex matrix.
///
/// Reduces to upper Hessenberg form with Householder reflections, runs a
/// Wilkinson-shifted QR iteration to complex Schur form and recovers the
/// eigenvectors by back substitution. Pairs come back sorted by
/// (real, imaginary) part. Vectors belonging to a cluster of equal
/// eigenvalues are orthonormalised under the Hermitian product whenever that
/// keeps them eigenvectors; for a defective cluster the raw, nearly parallel
/// Schur vectors are returned so callers can detect the coalescence.
///
/// Throws NumericalError on non-finite input, when the QR iteration does not
/// converge, or when a residual exceeds `tol`.
std::vector<EigenPair> eigendecompose(const ComplexMatrix& m, double tol = kDefaultTol);

/// Groups of indices into `values` lying within `radius` of each other
/// (transitively). Groups are ordered by their smallest index.
std::vector<std::vector<std::size_t>> cluster_eigenvalues(const std::vector<Complex>& values,
                                                          double radius);

/// exp(scalar * m) evaluated through a single cached eigendecomposition.
class SpectralExponential {
 public:
  /// Throws ExceptionalPointError when the eigenvector matrix is numerically singular.
  explicit SpectralExponential(const ComplexMatrix& m, double tol = kDefaultTol);

  ComplexMatrix operator()(Complex scalar) const;
  ComplexVector apply(Complex scalar, std::span<const Complex> v) const;

  const std::vector<EigenPair>& pairs() const { return pairs_; }
  double basis_condition() const { return condition_; }

 private:
  std::vector<EigenPair> pairs_;
  ComplexMatrix basis_;
  ComplexMatrix basis_inverse_;
  double condition_ = 0.0;
};

/// exp(scalar * m) = S exp(scalar * Lambda) S^-1.
ComplexMatrix mat_exp_times(const ComplexMatrix& m, Complex scalar, double tol = kDefaultTol);

}  // namespace ptmat
