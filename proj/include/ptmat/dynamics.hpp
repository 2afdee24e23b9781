#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ptmat/complex_matrix.hpp"
#include "ptmat/construction.hpp"
#include "ptmat/symmetry_algebra.hpp"

namespace ptmat {

/// Samples of an inner product along a time grid.
struct EvolutionTrace {
  std::vector<double> times;  // strictly increasing
  std::vector<Complex> inner_products;
  double max_drift = 0.0;  // sup_k |s_k - s_0|
};

/// Uniform grid on [0, t_max] with `steps` samples; a single sample at 0 when t_max is 0.
std::vector<double> time_grid(double t_max, std::size_t steps);

/// exp(-i H t) state.
ComplexVector evolve(const PTSystem& sys, std::span<const Complex> state, double t,
                     double tol = kDefaultTol);

enum class InnerProductKind { CPT, PT };

/// Samples <a(t)|b(t)> (or the PT product (a(t)|b(t))) with both states
/// propagated by exp(-i H t). Throws BrokenPhaseError unless the system is unbroken.
EvolutionTrace unitarity_trace(const PTSystem& sys, const COperator& c, std::span<const Complex> a,
                               std::span<const Complex> b, double t_max = 10.0,
                               std::size_t steps = 101,
                               InnerProductKind kind = InnerProductKind::CPT,
                               double tol = kDefaultTol);

/// Time dependence of the weight-matrix inner product for a PT-symmetric
/// Hamiltonian that need not be symmetric.
///
/// W is built from the phase-fixed, PT-normalised eigenvectors of h. Two
/// random unit states (seeded) are evolved and (a,0| exp(iHt) W exp(-iHt) |b,0)
/// is sampled, so the trace is constant exactly when W commutes with H. For an
/// asymmetric h whose W nearly commutes with it (||[W,H]||_inf <= 1e-3 ||H||_inf)
/// the demonstration is inconclusive and InconclusiveError is thrown; a
/// symmetric h is accepted as a control.
EvolutionTrace nonunitarity_demo(const ComplexMatrix& h, const ComplexMatrix& p, double t_max = 10.0,
                                 std::size_t steps = 101, std::uint64_t seed = 0,
                                 double tol = kDefaultTol);

/// Weight matrix of `h` over its phase-fixed, PT-normalised eigenbasis. Requires real,
/// simple eigenvalues.
WeightMatrix weight_matrix_for(const ComplexMatrix& h, const ComplexMatrix& p,
                               double tol = kDefaultTol);

}  // namespace ptmat
