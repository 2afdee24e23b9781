#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptmat/complex_matrix.hpp"
#include "ptmat/random.hpp"

namespace ptmat {

/// Multiplicities of the +1 and -1 eigenvalues of a parity operator.
struct Signature {
  std::size_t plus = 0;
  std::size_t minus = 0;

  std::size_t dim() const { return plus + minus; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Signature with the largest parity parameter count for dimension d:
/// equal halves for even d, one extra +1 for odd d.
Signature maximal_signature(std::size_t d);

/// Parity operator description: P = R(angles) P0 R(angles)^T.
struct ParitySpec {
  Signature signature;
  std::vector<double> angles;  // one per index pair i<j, lexicographic

  std::size_t dim() const { return signature.dim(); }
};

/// Small dense real matrix, row-major. Used for the blocks of H0.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  bool is_symmetric(double tol = 0.0) const;

  friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Real blocks of H0 = [[A, iB], [iB^T, C]].
struct BlockForm {
  RealMatrix a;  // symmetric, m+ x m+
  RealMatrix b;  // m+ x m-
  RealMatrix c;  // symmetric, m- x m-

  Signature signature() const { return {a.rows(), c.rows()}; }
};

/// How a PTSystem was produced. Hand-built or loaded systems may leave fields empty.
struct Provenance {
  std::optional<ParitySpec> parity;
  std::optional<BlockForm> blocks;
  std::optional<std::uint64_t> seed;
  std::optional<double> coupling;
};

/// A symmetric Hamiltonian bound to the parity operator it is PT-symmetric under.
class PTSystem {
 public:
  /// Validates the invariants: p real symmetric with p^2 = I, h symmetric
  /// within 1e-12 and P h* P = h within `tol`. Throws InvalidArgument otherwise.
  PTSystem(ComplexMatrix h, ComplexMatrix p, Provenance provenance = {}, double tol = kDefaultTol);

  const ComplexMatrix& h() const { return h_; }
  const ComplexMatrix& p() const { return p_; }
  const Provenance& provenance() const { return provenance_; }
  std::size_t dim() const { return h_.dim(); }
  /// Signature read off the trace of P.
  Signature signature() const;

 private:
  ComplexMatrix h_;
  ComplexMatrix p_;
  Provenance provenance_;
};

/// diag(+1 x m_plus, -1 x m_minus).
ComplexMatrix make_p0(std::size_t m_plus, std::size_t m_minus);

/// Ordered product of plane rotations G(i, j, angle) over i<j in lexicographic
/// order. G(i, j, a) has cos a at (i,i) and (j,j), -sin a at (i,j), sin a at (j,i).
ComplexMatrix make_rotation(std::size_t d, const std::vector<double>& angles);

/// R P0 R^T.
ComplexMatrix make_parity(const ParitySpec& spec);

/// [[A, iB], [iB^T, C]]. Throws on asymmetric A or C, or inconsistent shapes.
ComplexMatrix make_h0(const BlockForm& blocks);

/// h = R H0 R^T and p = R P0 R^T with the same rotation.
PTSystem make_pt_system(const BlockForm& blocks, const ParitySpec& spec,
                        std::optional<std::uint64_t> seed = std::nullopt);

/// Number of free parameters of a parity with the given signature:
/// d(d-1)/2 - m+(m+-1)/2 - m-(m--1)/2.
std::size_t count_parity_params(std::size_t d, std::size_t m_plus, std::size_t m_minus);

struct ParameterCounts {
  std::size_t parity_max = 0;      // real symmetric P, best signature
  std::size_t h0 = 0;              // P0 T-symmetric H0
  std::size_t pt = 0;              // PT-symmetric H
  std::size_t hermitian = 0;       // Hermitian H
  std::size_t real_symmetric = 0;  // real symmetric H

  friend bool operator==(const ParameterCounts&, const ParameterCounts&) = default;
};

/// Closed-form parameter counts for D x D matrices of each class.
ParameterCounts parameter_table(std::size_t d);

enum class MatrixClass : unsigned {
  RealSymmetric = 1u << 0,
  Hermitian = 1u << 1,
  PTSymmetric = 1u << 2,
  Symmetric = 1u << 3,
};

class MatrixClasses {
 public:
  void set(MatrixClass c) { bits_ |= static_cast<unsigned>(c); }
  bool has(MatrixClass c) const { return (bits_ & static_cast<unsigned>(c)) != 0; }
  bool empty() const { return bits_ == 0; }
  /// Names of the set flags in declaration order.
  std::vector<std::string> names() const;

 private:
  unsigned bits_ = 0;
};

/// Membership flags by direct entry comparison. PTSymmetric is only tested
/// when a parity is supplied; an invalid parity (P^2 != I) throws.
MatrixClasses classify_matrix(const ComplexMatrix& m, const std::optional<ComplexMatrix>& p,
                              double tol = kDefaultTol);

// Random generation. Angles are drawn first (uniform on [0, 2pi)), then the
// upper triangle of A, B row-major, the upper triangle of C (uniform on
// [-1, 1], B scaled by `coupling`).
ParitySpec random_parity_spec(Signature signature, Rng& rng);
BlockForm random_blocks(Signature signature, Rng& rng, double coupling = 1.0);
PTSystem random_pt_system(Signature signature, std::uint64_t seed, double coupling = 1.0);

/// Result of the finite-difference Jacobian rank audit at several random points.
struct ParameterAudit {
  Signature signature;
  std::size_t parity_expected = 0;
  std::size_t hamiltonian_expected = 0;
  std::vector<std::size_t> parity_ranks;
  std::vector<std::size_t> hamiltonian_ranks;

  bool passed() const;
};

/// Numerical rank of the Jacobians of angles -> P and (blocks, angles) -> H
/// at `points` seeded random points. Central differences with step 1e-6;
/// rank counts singular values above 1e-4 times the largest.
ParameterAudit audit_parameter_counts(Signature signature, std::size_t points, std::uint64_t seed);

}  // namespace ptmat
