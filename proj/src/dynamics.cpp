#include "ptmat/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "ptmat/eigensolver.hpp"
#include "ptmat/errors.hpp"
#include "ptmat/spectral.hpp"

namespace ptmat {

namespace {

constexpr Complex kI{0.0, 1.0};

double sup_drift(const std::vector<Complex>& samples) {
  double drift = 0.0;
  for (const auto& s : samples) drift = std::max(drift, std::abs(s - samples.front()));
  return drift;
}

ComplexVector random_unit_state(std::size_t dim, Rng& rng) {
  ComplexVector v(dim);
  for (auto& z : v) z = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return scaled(v, 1.0 / norm2(v));
}

void check_parity(const ComplexMatrix& p, std::size_t dim) {
  if (p.dim() != dim) throw InvalidArgument("parity dimension does not match the Hamiltonian");
  if (!p.is_real(1e-12) || !p.is_symmetric(1e-12) ||
      max_abs(mat_mul(p, p) - ComplexMatrix::identity(dim)) > 1e-10) {
    throw InvalidArgument("parity must be a real symmetric involution");
  }
}

}  // namespace

std::vector<double> time_grid(double t_max, std::size_t steps) {
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw InvalidArgument("time_grid: t_max must be >= 0");
  if (t_max == 0.0) return {0.0};
  if (steps < 2) throw InvalidArgument("time_grid: need at least 2 steps");
  std::vector<double> times(steps);
  for (std::size_t k = 0; k < steps; ++k)
    times[k] = t_max * static_cast<double>(k) / static_cast<double>(steps - 1);
  return times;
}

ComplexVector evolve(const PTSystem& sys, std::span<const Complex> state, double t, double tol) {
  if (state.size() != sys.dim()) throw InvalidArgument("evolve: dimension mismatch");
  if (t == 0.0) return ComplexVector(state.begin(), state.end());
  return SpectralExponential(sys.h(), tol).apply(-kI * t, state);
}

EvolutionTrace unitarity_trace(const PTSystem& sys, const COperator& c, std::span<const Complex> a,
                               std::span<const Complex> b, double t_max, std::size_t steps,
                               InnerProductKind kind, double tol) {
  if (a.size() != sys.dim() || b.size() != sys.dim()) {
    throw InvalidArgument("unitarity_trace: dimension mismatch");
  }
  const SpectralData data = classify_phase(sys, tol);
  if (data.phase == Phase::Broken) throw BrokenPhaseError("unitarity_trace: PT symmetry is broken");
  if (data.phase == Phase::Exceptional) {
    throw ExceptionalPointError("unitarity_trace: system is at an exceptional point");
  }

  const SpectralExponential propagator(sys.h(), tol);
  EvolutionTrace trace;
  trace.times = time_grid(t_max, steps);
  for (double t : trace.times) {
    const ComplexVector at = propagator.apply(-kI * t, a);
    const ComplexVector bt = propagator.apply(-kI * t, b);
    trace.inner_products.push_back(kind == InnerProductKind::CPT ? cpt_inner(at, bt, c, sys.p())
                                                                 : pt_inner(at, bt, sys.p()));
  }
  trace.max_drift = sup_drift(trace.inner_products);
  return trace;
}

WeightMatrix weight_matrix_for(const ComplexMatrix& h, const ComplexMatrix& p, double tol) {
  check_parity(p, h.dim());
  const std::vector<EigenPair> pairs = eigendecompose(h, tol);
  std::vector<ComplexVector> basis;
  for (const auto& pair : pairs) {
    if (std::abs(pair.value.imag()) > tol * std::max(1.0, std::abs(pair.value))) {
      throw BrokenPhaseError("weight matrix: Hamiltonian has complex eigenvalues");
    }
    basis.push_back(pt_normalize(fix_pt_phase(pair.vector, p, tol), p, tol));
  }
  return build_weight_matrix(basis, p);
}

EvolutionTrace nonunitarity_demo(const ComplexMatrix& h, const ComplexMatrix& p, double t_max,
                                 std::size_t steps, std::uint64_t seed, double tol) {
  check_parity(p, h.dim());
  if (max_abs(pt_commutation_residual(h, p, TimeReversal::Conjugation)) >
      tol * std::max(1.0, max_abs(h))) {
    throw InvalidArgument("nonunitarity_demo: Hamiltonian does not commute with PT");
  }
  const WeightMatrix w = weight_matrix_for(h, p, tol);
  const bool symmetric = h.is_symmetric(1e-12 * std::max(1.0, max_abs(h)));
  if (!symmetric && norm_inf(commutator(w.matrix, h)) <= 1e-3 * norm_inf(h)) {
    throw InconclusiveError("nonunitarity_demo: W commutes with H to within 1e-3");
  }

  Rng rng(seed);
  const ComplexVector a = random_unit_state(h.dim(), rng);
  const ComplexVector b = random_unit_state(h.dim(), rng);
  const ComplexVector bra = pt_conjugate(a, p);

  const SpectralExponential propagator(h, tol);
  EvolutionTrace trace;
  trace.times = time_grid(t_max, steps);
  for (double t : trace.times) {
    // (a,t| = (a,0| exp(iHt): row times matrix is the transposed product.
    const ComplexVector bra_t = mat_vec(propagator(kI * t).transpose(), bra);
    const ComplexVector ket_t = propagator.apply(-kI * t, b);
    trace.inner_products.push_back(dot(bra_t, mat_vec(w.matrix, ket_t)));
  }
  trace.max_drift = sup_drift(trace.inner_products);
  return trace;
}

}  // namespace ptmat
