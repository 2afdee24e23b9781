#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ptmat/complex_matrix.hpp"
#include "ptmat/construction.hpp"
#include "ptmat/eigensolver.hpp"

namespace ptmat {

enum class Phase { Unbroken, Broken, Exceptional };

std::string to_string(Phase phase);

/// Width of the band around a coalescence that is reported as exceptional.
///
/// The test quantity is the self-overlap |v^T v| of each unit eigenvector,
/// which is the reciprocal condition number of its eigenvalue for a complex
/// symmetric matrix and vanishes exactly at an exceptional point. A system is
/// flagged when |v^T v|^2 < 2 * window. For the 2x2 family this is
/// |1 - (s/t)^2| < 2 * window, i.e. |s/t - 1| below roughly `window`.
inline constexpr double kExceptionalWindow = 1e-8;

struct SpectralData {
  /// Sorted eigenpairs. In the unbroken phase every vector is phase fixed
  /// (PT v = v) and has unit 2-norm.
  std::vector<EigenPair> pairs;
  Phase phase = Phase::Exceptional;
  std::size_t real_count = 0;
  std::size_t conjugate_pairs = 0;
  /// Sign of the PT norm (v|v) of each eigenvector, unbroken phase only.
  std::vector<int> pt_norm_signs;
  /// Smallest |v^T v| over the unit eigenvectors.
  double min_self_overlap = 0.0;
};

/// P v*: time reversal is complex conjugation, then parity.
ComplexVector pt_apply(std::span<const Complex> v, const ComplexMatrix& p);

/// Rephases an eigenvector so that PT v = v.
///
/// The phase is read from theta = arg(v^H PT v / v^H v) with theta in
/// (-pi, pi]; the result is exp(i theta/2) v, made exactly PT-invariant by
/// averaging with its PT image and signed so that its largest entry has a
/// non-negative real part. Throws BrokenPhaseError when PT v is not collinear
/// with v to within `tol` (relative to |v|).
ComplexVector fix_pt_phase(std::span<const Complex> v, const ComplexMatrix& p,
                           double tol = kDefaultTol);

/// Eigen-decomposes the system and decides its PT phase.
///
/// Exceptional: a unit eigenvector is (nearly) self-orthogonal, see
/// kExceptionalWindow, or a degenerate cluster has no PT-orthonormal basis.
/// Unbroken: every eigenvalue satisfies |Im| <= tol * max(1, |lambda|) and
/// every eigenvector could be phase fixed. Broken otherwise, with the complex
/// eigenvalues matched into conjugate pairs.
SpectralData classify_phase(const PTSystem& sys, double tol = kDefaultTol,
                            double exceptional_window = kExceptionalWindow);

/// Signs of the PT norms of the phase-fixed eigenvectors, in eigenvalue order.
/// Throws BrokenPhaseError or ExceptionalPointError outside the unbroken phase.
std::vector<int> pt_norm_signature(const PTSystem& sys, double tol = kDefaultTol);

enum class TimeReversal { Conjugation, ConjugateTranspose };

/// Residual of the PT-commutation condition P T(h) P = h, where T(h) is h*
/// or h^H depending on the chosen time reversal.
ComplexMatrix pt_commutation_residual(const ComplexMatrix& h, const ComplexMatrix& p,
                                      TimeReversal time_reversal);

bool pt_commutes(const ComplexMatrix& h, const ComplexMatrix& p, TimeReversal time_reversal,
                 double tol = kDefaultTol);

}  // namespace ptmat
