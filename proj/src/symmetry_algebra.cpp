#include "ptmat/symmetry_algebra.hpp"

#include <cmath>
#include <string>

#include "ptmat/errors.hpp"
#include "ptmat/spectral.hpp"

namespace ptmat {

ComplexVector pt_conjugate(std::span<const Complex> v, const ComplexMatrix& p) {
  if (v.size() != p.dim()) throw InvalidArgument("pt_conjugate: dimension mismatch");
  return pt_apply(v, p);
}

Complex pt_inner(std::span<const Complex> a, std::span<const Complex> b, const ComplexMatrix& p) {
  if (a.size() != b.size()) throw InvalidArgument("pt_inner: dimension mismatch");
  return dot(pt_conjugate(a, p), b);
}

ComplexVector pt_normalize(std::span<const Complex> v, const ComplexMatrix& p, double tol) {
  const double norm = pt_inner(v, v, p).real();
  const double size = norm2(v);
  if (std::abs(norm) < tol * size * size) {
    throw ExceptionalPointError("pt_normalize: PT norm vanishes");
  }
  return scaled(v, 1.0 / std::sqrt(std::abs(norm)));
}

COperator build_c_operator(const PTSystem& sys, double tol) {
  const SpectralData data = classify_phase(sys, tol);
  if (data.phase == Phase::Broken) {
    throw BrokenPhaseError("build_c_operator: PT symmetry is broken (" +
                           std::to_string(data.conjugate_pairs) + " conjugate pairs)");
  }
  if (data.phase == Phase::Exceptional) {
    throw ExceptionalPointError("build_c_operator: system is at an exceptional point");
  }
  ComplexMatrix c(sys.dim());
  for (const auto& pair : data.pairs) {
    const ComplexVector ket = pt_normalize(pair.vector, sys.p(), tol);
    c += outer(ket, pt_conjugate(ket, sys.p()));
  }
  return COperator{std::move(c)};
}

Complex cpt_inner(std::span<const Complex> a, std::span<const Complex> b, const COperator& c,
                  const ComplexMatrix& p) {
  if (a.size() != b.size() || a.size() != p.dim() || c.matrix.dim() != p.dim()) {
    throw InvalidArgument("cpt_inner: dimension mismatch");
  }
  return dot(mat_vec(c.matrix, pt_apply(a, p)), b);
}

WeightMatrix build_weight_matrix(const std::vector<ComplexVector>& eigvecs, const ComplexMatrix& p) {
  const std::size_t n = p.dim();
  if (eigvecs.size() != n) throw InvalidArgument("build_weight_matrix: need one vector per dimension");
  const ComplexMatrix kets = ComplexMatrix::from_columns(eigvecs);
  ComplexMatrix bras(n);
  for (std::size_t m = 0; m < n; ++m) {
    const ComplexVector row = pt_conjugate(eigvecs[m], p);
    for (std::size_t j = 0; j < n; ++j) bras(m, j) = row[j];
  }
  constexpr double max_condition = 1e8;
  if (!(condition_number(kets) < max_condition) || !(condition_number(bras) < max_condition)) {
    throw SingularMatrixError("build_weight_matrix: eigenbasis is numerically singular");
  }
  return WeightMatrix{mat_mul(inverse(bras), inverse(kets))};
}

}  // namespace ptmat
