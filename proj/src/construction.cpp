#include "ptmat/construction.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "ptmat/errors.hpp"

namespace ptmat {

namespace {

constexpr Complex kI{0.0, 1.0};

std::size_t pair_count(std::size_t d) { return d * (d - 1) / 2; }

// (x + x^T) / 2 is exactly symmetric in floating point.
ComplexMatrix symmetrized(const ComplexMatrix& m) {
  ComplexMatrix s(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
  return s;
}

ComplexMatrix conjugate_by(const ComplexMatrix& r, const ComplexMatrix& m) {
  return symmetrized(mat_mul(mat_mul(r, m), r.transpose()));
}

void check_parity_spec(const ParitySpec& spec) {
  if (spec.dim() == 0) throw InvalidArgument("parity: signature must have m+ + m- >= 1");
  if (spec.angles.size() != pair_count(spec.dim())) {
    throw InvalidArgument("parity: expected " + std::to_string(pair_count(spec.dim())) +
                          " angles for dimension " + std::to_string(spec.dim()) + ", got " +
                          std::to_string(spec.angles.size()));
  }
}

std::size_t numerical_rank(const Eigen::MatrixXd& jac) {
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(jac).singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = 1e-4 * sv(0);
  return static_cast<std::size_t>((sv.array() > cutoff).count());
}

// Free parameters of (blocks, angles) in a flat vector: upper(A), B, upper(C), angles.
std::vector<double> flatten(const BlockForm& blocks, const ParitySpec& spec) {
  std::vector<double> x;
  for (std::size_t i = 0; i < blocks.a.rows(); ++i)
    for (std::size_t j = i; j < blocks.a.cols(); ++j) x.push_back(blocks.a(i, j));
  for (std::size_t i = 0; i < blocks.b.rows(); ++i)
    for (std::size_t j = 0; j < blocks.b.cols(); ++j) x.push_back(blocks.b(i, j));
  for (std::size_t i = 0; i < blocks.c.rows(); ++i)
    for (std::size_t j = i; j < blocks.c.cols(); ++j) x.push_back(blocks.c(i, j));
  x.insert(x.end(), spec.angles.begin(), spec.angles.end());
  return x;
}

std::pair<BlockForm, ParitySpec> unflatten(const std::vector<double>& x, Signature sig) {
  BlockForm blocks{RealMatrix(sig.plus, sig.plus), RealMatrix(sig.plus, sig.minus),
                   RealMatrix(sig.minus, sig.minus)};
  std::size_t k = 0;
  for (std::size_t i = 0; i < sig.plus; ++i)
    for (std::size_t j = i; j < sig.plus; ++j) blocks.a(i, j) = blocks.a(j, i) = x[k++];
  for (std::size_t i = 0; i < sig.plus; ++i)
    for (std::size_t j = 0; j < sig.minus; ++j) blocks.b(i, j) = x[k++];
  for (std::size_t i = 0; i < sig.minus; ++i)
    for (std::size_t j = i; j < sig.minus; ++j) blocks.c(i, j) = blocks.c(j, i) = x[k++];
  ParitySpec spec{sig, std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(k), x.end())};
  return {std::move(blocks), std::move(spec)};
}

// Real and imaginary parts of every entry, stacked.
Eigen::VectorXd realify(const ComplexMatrix& m, bool with_imag) {
  const std::size_t n = m.dim() * m.dim();
  Eigen::VectorXd out(static_cast<Eigen::Index>(with_imag ? 2 * n : n));
  for (std::size_t k = 0; k < n; ++k) {
    out(static_cast<Eigen::Index>(k)) = m.entries()[k].real();
    if (with_imag) out(static_cast<Eigen::Index>(n + k)) = m.entries()[k].imag();
  }
  return out;
}

template <typename Map>
Eigen::MatrixXd central_jacobian(const std::vector<double>& x, Map&& map) {
  constexpr double step = 1e-6;
  const Eigen::VectorXd f0 = map(x);
  Eigen::MatrixXd jac(f0.size(), static_cast<Eigen::Index>(x.size()));
  std::vector<double> probe = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    probe[k] = x[k] + step;
    const Eigen::VectorXd fp = map(probe);
    probe[k] = x[k] - step;
    const Eigen::VectorXd fm = map(probe);
    probe[k] = x[k];
    jac.col(static_cast<Eigen::Index>(k)) = (fp - fm) / (2.0 * step);
  }
  return jac;
}

}  // namespace

Signature maximal_signature(std::size_t d) { return {(d + 1) / 2, d / 2}; }

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw InvalidArgument("RealMatrix: entry count mismatch");
}

bool RealMatrix::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

PTSystem::PTSystem(ComplexMatrix h, ComplexMatrix p, Provenance provenance, double tol)
    : h_(std::move(h)), p_(std::move(p)), provenance_(std::move(provenance)) {
  if (h_.dim() == 0 || h_.dim() != p_.dim()) {
    throw InvalidArgument("PTSystem: h and p must be non-empty and of equal dimension");
  }
  if (!p_.is_real(1e-12) || !p_.is_symmetric(1e-12)) {
    throw InvalidArgument("PTSystem: parity must be real and symmetric");
  }
  if (max_abs(mat_mul(p_, p_) - ComplexMatrix::identity(p_.dim())) > 1e-10) {
    throw InvalidArgument("PTSystem: parity does not square to the identity");
  }
  if (!h_.is_symmetric(1e-12 * std::max(1.0, max_abs(h_)))) {
    throw InvalidArgument("PTSystem: Hamiltonian is not symmetric");
  }
  const ComplexMatrix image = mat_mul(mat_mul(p_, h_.conj()), p_);
  if (max_abs(image - h_) > tol * std::max(1.0, max_abs(h_))) {
    throw InvalidArgument("PTSystem: Hamiltonian does not commute with PT");
  }
}

Signature PTSystem::signature() const {
  const double tr = p_.trace().real();
  const auto d = static_cast<double>(dim());
  const auto plus = static_cast<std::size_t>(std::lround((d + tr) / 2.0));
  return {plus, dim() - plus};
}

ComplexMatrix make_p0(std::size_t m_plus, std::size_t m_minus) {
  if (m_plus + m_minus == 0) throw InvalidArgument("make_p0: m+ + m- must be at least 1");
  ComplexMatrix p(m_plus + m_minus);
  for (std::size_t i = 0; i < m_plus + m_minus; ++i) p(i, i) = (i < m_plus) ? 1.0 : -1.0;
  return p;
}

ComplexMatrix make_rotation(std::size_t d, const std::vector<double>& angles) {
  if (d == 0) throw InvalidArgument("make_rotation: dimension must be positive");
  if (angles.size() != pair_count(d)) {
    throw InvalidArgument("make_rotation: expected " + std::to_string(pair_count(d)) +
                          " angles, got " + std::to_string(angles.size()));
  }
  ComplexMatrix r = ComplexMatrix::identity(d);
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j, ++k) {
      const double c = std::cos(angles[k]);
      const double s = std::sin(angles[k]);
      // r <- r * G(i, j): only columns i and j change.
      for (std::size_t row = 0; row < d; ++row) {
        const Complex ri = r(row, i);
        const Complex rj = r(row, j);
        r(row, i) = c * ri + s * rj;
        r(row, j) = -s * ri + c * rj;
      }
    }
  }
  return r;
}

ComplexMatrix make_parity(const ParitySpec& spec) {
  check_parity_spec(spec);
  const ComplexMatrix r = make_rotation(spec.dim(), spec.angles);
  return conjugate_by(r, make_p0(spec.signature.plus, spec.signature.minus));
}

ComplexMatrix make_h0(const BlockForm& blocks) {
  const std::size_t mp = blocks.a.rows();
  const std::size_t mm = blocks.c.rows();
  if (blocks.a.cols() != mp || blocks.c.cols() != mm) {
    throw InvalidArgument("make_h0: A and C must be square");
  }
  const bool b_empty = blocks.b.rows() * blocks.b.cols() == 0;
  if (!(b_empty && mp * mm == 0) && (blocks.b.rows() != mp || blocks.b.cols() != mm)) {
    throw InvalidArgument("make_h0: B must be m+ x m-");
  }
  if (!blocks.a.is_symmetric() || !blocks.c.is_symmetric()) {
    throw InvalidArgument("make_h0: A and C must be symmetric");
  }
  if (mp + mm == 0) throw InvalidArgument("make_h0: empty block form");

  ComplexMatrix h(mp + mm);
  for (std::size_t i = 0; i < mp; ++i)
    for (std::size_t j = 0; j < mp; ++j) h(i, j) = blocks.a(i, j);
  for (std::size_t i = 0; i < mm; ++i)
    for (std::size_t j = 0; j < mm; ++j) h(mp + i, mp + j) = blocks.c(i, j);
  if (!b_empty) {
    for (std::size_t i = 0; i < mp; ++i) {
      for (std::size_t j = 0; j < mm; ++j) {
        h(i, mp + j) = kI * blocks.b(i, j);
        h(mp + j, i) = kI * blocks.b(i, j);
      }
    }
  }
  return h;
}

PTSystem make_pt_system(const BlockForm& blocks, const ParitySpec& spec,
                        std::optional<std::uint64_t> seed) {
  check_parity_spec(spec);
  if (blocks.signature() != spec.signature) {
    throw InvalidArgument("make_pt_system: block signature does not match parity signature");
  }
  const ComplexMatrix r = make_rotation(spec.dim(), spec.angles);
  ComplexMatrix h = conjugate_by(r, make_h0(blocks));
  ComplexMatrix p = conjugate_by(r, make_p0(spec.signature.plus, spec.signature.minus));
  Provenance prov;
  prov.parity = spec;
  prov.blocks = blocks;
  prov.seed = seed;
  return PTSystem(std::move(h), std::move(p), std::move(prov));
}

std::size_t count_parity_params(std::size_t d, std::size_t m_plus, std::size_t m_minus) {
  if (m_plus + m_minus != d) {
    throw InvalidArgument("count_parity_params: m+ + m- must equal d");
  }
  auto tri = [](std::size_t n) { return n * (n == 0 ? 0 : n - 1) / 2; };
  return tri(d) - tri(m_plus) - tri(m_minus);
}

ParameterCounts parameter_table(std::size_t d) {
  if (d == 0) throw InvalidArgument("parameter_table: dimension must be positive");
  // (1 - (-1)^D)/8 is 1/4 for odd D; all counts are exact in integer form.
  const std::size_t odd = d % 2;
  ParameterCounts c;
  c.parity_max = (d * d - odd) / 4;
  c.h0 = d * (d + 1) / 2;
  c.pt = (3 * d * d + 2 * d - odd) / 4;
  c.hermitian = d * d;
  c.real_symmetric = d * (d + 1) / 2;
  return c;
}

std::vector<std::string> MatrixClasses::names() const {
  std::vector<std::string> out;
  if (has(MatrixClass::RealSymmetric)) out.emplace_back("RealSymmetric");
  if (has(MatrixClass::Hermitian)) out.emplace_back("Hermitian");
  if (has(MatrixClass::PTSymmetric)) out.emplace_back("PTSymmetric");
  if (has(MatrixClass::Symmetric)) out.emplace_back("Symmetric");
  return out;
}

MatrixClasses classify_matrix(const ComplexMatrix& m, const std::optional<ComplexMatrix>& p,
                              double tol) {
  MatrixClasses flags;
  const bool symmetric = m.is_symmetric(tol);
  if (symmetric) flags.set(MatrixClass::Symmetric);
  if (m.is_hermitian(tol)) flags.set(MatrixClass::Hermitian);
  if (symmetric && m.is_real(tol)) flags.set(MatrixClass::RealSymmetric);
  if (p) {
    if (p->dim() != m.dim()) throw InvalidArgument("classify_matrix: parity dimension mismatch");
    if (max_abs(mat_mul(*p, *p) - ComplexMatrix::identity(p->dim())) > std::max(tol, 1e-12)) {
      throw InvalidArgument("classify_matrix: parity does not square to the identity");
    }
    const ComplexMatrix image = mat_mul(mat_mul(*p, m.conj()), *p);
    if (max_abs(image - m) <= tol) flags.set(MatrixClass::PTSymmetric);
  }
  return flags;
}

ParitySpec random_parity_spec(Signature signature, Rng& rng) {
  ParitySpec spec{signature, std::vector<double>(pair_count(signature.dim()))};
  for (auto& a : spec.angles) a = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return spec;
}

BlockForm random_blocks(Signature signature, Rng& rng, double coupling) {
  const std::size_t mp = signature.plus;
  const std::size_t mm = signature.minus;
  BlockForm blocks{RealMatrix(mp, mp), RealMatrix(mp, mm), RealMatrix(mm, mm)};
  for (std::size_t i = 0; i < mp; ++i)
    for (std::size_t j = i; j < mp; ++j) blocks.a(i, j) = blocks.a(j, i) = rng.uniform(-1.0, 1.0);
  for (std::size_t i = 0; i < mp; ++i)
    for (std::size_t j = 0; j < mm; ++j) blocks.b(i, j) = coupling * rng.uniform(-1.0, 1.0);
  for (std::size_t i = 0; i < mm; ++i)
    for (std::size_t j = i; j < mm; ++j) blocks.c(i, j) = blocks.c(j, i) = rng.uniform(-1.0, 1.0);
  return blocks;
}

PTSystem random_pt_system(Signature signature, std::uint64_t seed, double coupling) {
  if (signature.dim() == 0) throw InvalidArgument("random_pt_system: empty signature");
  Rng rng(seed);
  ParitySpec spec = random_parity_spec(signature, rng);
  BlockForm blocks = random_blocks(signature, rng, coupling);
  PTSystem sys = make_pt_system(blocks, spec, seed);
  Provenance prov = sys.provenance();
  prov.coupling = coupling;
  return PTSystem(sys.h(), sys.p(), std::move(prov));
}

bool ParameterAudit::passed() const {
  auto all_equal = [](const std::vector<std::size_t>& ranks, std::size_t expected) {
    return !ranks.empty() &&
           std::all_of(ranks.begin(), ranks.end(), [&](std::size_t r) { return r == expected; });
  };
  return all_equal(parity_ranks, parity_expected) &&
         all_equal(hamiltonian_ranks, hamiltonian_expected);
}

ParameterAudit audit_parameter_counts(Signature signature, std::size_t points,
                                      std::uint64_t seed) {
  const std::size_t d = signature.dim();
  ParameterAudit audit;
  audit.signature = signature;
  audit.parity_expected = count_parity_params(d, signature.plus, signature.minus);
  audit.hamiltonian_expected = d * (d + 1) / 2 + audit.parity_expected;

  Rng rng(seed);
  for (std::size_t k = 0; k < points; ++k) {
    const ParitySpec spec = random_parity_spec(signature, rng);
    const BlockForm blocks = random_blocks(signature, rng);

    const Eigen::MatrixXd parity_jac = central_jacobian(spec.angles, [&](const std::vector<double>& a) {
      return realify(make_parity(ParitySpec{signature, a}), false);
    });
    audit.parity_ranks.push_back(numerical_rank(parity_jac));

    const Eigen::MatrixXd ham_jac =
        central_jacobian(flatten(blocks, spec), [&](const std::vector<double>& x) {
          const auto [b, s] = unflatten(x, signature);
          const ComplexMatrix r = make_rotation(d, s.angles);
          return realify(mat_mul(mat_mul(r, make_h0(b)), r.transpose()), true);
        });
    audit.hamiltonian_ranks.push_back(numerical_rank(ham_jac));
  }
  return audit;
}

}  // namespace ptmat
