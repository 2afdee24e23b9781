#include "ptmat/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "ptmat/errors.hpp"
#include "ptmat/symmetry_algebra.hpp"

namespace ptmat {

namespace {

constexpr Complex kI{0.0, 1.0};

bool is_real_eigenvalue(Complex lambda, double tol) {
  return std::abs(lambda.imag()) <= tol * std::max(1.0, std::abs(lambda));
}

// Flips the overall sign so that the largest entry has a non-negative real part.
void canonical_sign(ComplexVector& v) {
  std::size_t lead = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[lead])) lead = i;
  if (v[lead].real() < 0.0)
    for (auto& z : v) z = -z;
}

double self_overlap(std::span<const Complex> v) {
  const double nrm = norm2(v);
  return std::abs(dot(v, v)) / (nrm * nrm);
}

double residual_of(const ComplexMatrix& m, Complex value, std::span<const Complex> v) {
  ComplexVector r = mat_vec(m, v);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= value * v[i];
  return norm2(r);
}

// PT-orthogonal, PT-invariant unit basis of the span of a degenerate cluster
// of real eigenvalues. Returns nothing when the cluster is defective or its
// PT Gram matrix is (nearly) singular.
std::optional<std::vector<ComplexVector>> pt_basis_for_cluster(
    const std::vector<ComplexVector>& vectors, const ComplexMatrix& h, Complex value,
    const ComplexMatrix& p, double overlap_floor, double tol) {
  const std::size_t k = vectors.size();
  // The eigensolver only hands back a non-orthonormal cluster when it is defective.
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (std::abs(hdot(vectors[a], vectors[b])) > 1e-6) return std::nullopt;
  std::vector<ComplexVector> candidates;
  for (const auto& v : vectors) {
    const ComplexVector w = pt_apply(v, p);
    candidates.push_back(add(v, w));
    candidates.push_back(scaled(subtract(v, w), kI));
  }

  // Gram-Schmidt with the real inner product Re(u^H w); real combinations keep PT invariance.
  std::vector<ComplexVector> basis;
  for (auto& u : candidates) {
    const double original = norm2(u);
    if (original == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double proj = hdot(b, u).real();
        for (std::size_t i = 0; i < u.size(); ++i) u[i] -= proj * b[i];
      }
    }
    const double nrm = norm2(u);
    if (nrm <= 1e-8 * original) continue;
    for (auto& z : u) z /= nrm;
    basis.push_back(u);
    if (basis.size() == k) break;
  }
  if (basis.size() < k) return std::nullopt;

  Eigen::MatrixXd gram(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          pt_inner(basis[a], basis[b], p).real();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  const Eigen::MatrixXd& q = solver.eigenvectors();

  std::vector<ComplexVector> out;
  for (std::size_t i = 0; i < k; ++i) {
    ComplexVector w(basis[0].size());
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t r = 0; r < w.size(); ++r)
        w[r] += q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i)) * basis[a][r];
    const double nrm = norm2(w);
    for (auto& z : w) z /= nrm;
    if (self_overlap(w) < overlap_floor || residual_of(h, value, w) > tol) return std::nullopt;
    canonical_sign(w);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

std::string to_string(Phase phase) {
  switch (phase) {
    case Phase::Unbroken:
      return "unbroken";
    case Phase::Broken:
      return "broken";
    case Phase::Exceptional:
      return "exceptional";
  }
  return "unknown";
}

ComplexVector pt_apply(std::span<const Complex> v, const ComplexMatrix& p) {
  if (v.size() != p.dim()) throw InvalidArgument("pt_apply: dimension mismatch");
  return mat_vec(p, conj(v));
}

ComplexVector fix_pt_phase(std::span<const Complex> v, const ComplexMatrix& p, double tol) {
  const ComplexVector w = pt_apply(v, p);
  const double vv = hdot(v, v).real();
  if (vv == 0.0) throw InvalidArgument("fix_pt_phase: zero vector");
  double theta = std::arg(hdot(v, w) / vv);
  if (theta <= -std::numbers::pi) theta = std::numbers::pi;

  const Complex rotation = std::polar(1.0, theta);
  double mismatch = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) mismatch += std::norm(w[i] - rotation * v[i]);
  if (std::sqrt(mismatch) > tol * std::sqrt(vv)) {
    throw BrokenPhaseError("fix_pt_phase: PT v is not collinear with v");
  }

  const ComplexVector half = scaled(v, std::polar(1.0, 0.5 * theta));
  ComplexVector fixed = scaled(add(half, pt_apply(half, p)), 0.5);
  const double restore = std::sqrt(vv) / norm2(fixed);
  for (auto& z : fixed) z *= restore;
  canonical_sign(fixed);
  return fixed;
}

SpectralData classify_phase(const PTSystem& sys, double tol, double exceptional_window) {
  SpectralData out;
  out.pairs = eigendecompose(sys.h(), tol);
  const ComplexMatrix& p = sys.p();
  const double overlap_floor = std::sqrt(2.0 * exceptional_window);

  out.min_self_overlap = std::numeric_limits<double>::infinity();
  for (const auto& pair : out.pairs)
    out.min_self_overlap = std::min(out.min_self_overlap, self_overlap(pair.vector));

  std::vector<Complex> values;
  for (const auto& pair : out.pairs) values.push_back(pair.value);
  const auto clusters = cluster_eigenvalues(values, kClusterRadius * norm_fro(sys.h()));

  out.real_count = static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [tol](Complex z) { return is_real_eigenvalue(z, tol); }));

  if (out.real_count == values.size()) {
    // Candidate unbroken phase: phase-fix every eigenvector.
    for (const auto& cluster : clusters) {
      if (cluster.size() == 1) {
        EigenPair& pair = out.pairs[cluster[0]];
        if (self_overlap(pair.vector) < overlap_floor) {
          out.phase = Phase::Exceptional;
          return out;
        }
        try {
          pair.vector = fix_pt_phase(pair.vector, p, tol);
        } catch (const BrokenPhaseError&) {
          out.phase = Phase::Exceptional;
          return out;
        }
        continue;
      }
      std::vector<ComplexVector> vectors;
      for (std::size_t idx : cluster) vectors.push_back(out.pairs[idx].vector);
      Complex centre = 0.0;
      for (std::size_t idx : cluster) centre += out.pairs[idx].value;
      centre /= static_cast<double>(cluster.size());
      const auto basis =
          pt_basis_for_cluster(vectors, sys.h(), centre.real(), p, overlap_floor, tol);
      if (!basis) {
        out.phase = Phase::Exceptional;
        return out;
      }
      for (std::size_t k = 0; k < cluster.size(); ++k) out.pairs[cluster[k]].vector = (*basis)[k];
    }
    for (auto& pair : out.pairs) {
      pair.residual = residual_of(sys.h(), pair.value, pair.vector);
      out.pt_norm_signs.push_back(pt_inner(pair.vector, pair.vector, p).real() > 0.0 ? 1 : -1);
    }
    out.min_self_overlap = std::numeric_limits<double>::infinity();
    for (const auto& pair : out.pairs)
      out.min_self_overlap = std::min(out.min_self_overlap, self_overlap(pair.vector));
    out.phase = Phase::Unbroken;
    return out;
  }

  if (out.min_self_overlap < overlap_floor) {
    out.phase = Phase::Exceptional;
    return out;
  }

  // Broken phase: pair each complex eigenvalue with its conjugate.
  std::vector<bool> used(values.size(), false);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (used[i] || is_real_eigenvalue(values[i], tol)) continue;
    std::size_t best = values.size();
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (j == i || used[j] || is_real_eigenvalue(values[j], tol)) continue;
      const double gap = std::abs(values[i] - std::conj(values[j]));
      if (gap < best_gap) {
        best_gap = gap;
        best = j;
      }
    }
    const double allowed = std::max(tol, 1e-9) * std::max(1.0, std::abs(values[i]));
    if (best == values.size() || best_gap > allowed) {
      throw NumericalError("classify_phase: complex eigenvalue without a conjugate partner");
    }
    used[i] = used[best] = true;
    ++out.conjugate_pairs;
  }
  out.phase = Phase::Broken;
  return out;
}

std::vector<int> pt_norm_signature(const PTSystem& sys, double tol) {
  SpectralData data = classify_phase(sys, tol);
  if (data.phase == Phase::Broken) {
    throw BrokenPhaseError("pt_norm_signature: PT symmetry is broken");
  }
  if (data.phase == Phase::Exceptional) {
    throw ExceptionalPointError("pt_norm_signature: system is at an exceptional point");
  }
  return data.pt_norm_signs;
}

ComplexMatrix pt_commutation_residual(const ComplexMatrix& h, const ComplexMatrix& p,
                                      TimeReversal time_reversal) {
  const ComplexMatrix reversed = time_reversal == TimeReversal::Conjugation ? h.conj() : h.adjoint();
  return mat_mul(mat_mul(p, reversed), p) - h;
}

bool pt_commutes(const ComplexMatrix& h, const ComplexMatrix& p, TimeReversal time_reversal,
                 double tol) {
  return max_abs(pt_commutation_residual(h, p, time_reversal)) <= tol;
}

}  // namespace ptmat
