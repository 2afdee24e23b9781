#include "ptmat/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ptmat/errors.hpp"

namespace ptmat {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Plane rotation G = [[c, s], [-conj(s), c]] with real c.
struct Rotation {
  double c = 1.0;
  Complex s = 0.0;
};

// Rotation that maps (a, b) to (r, 0).
Rotation make_rotation(Complex a, Complex b) {
  if (b == 0.0) return {};
  if (a == 0.0) return {0.0, std::conj(b) / std::abs(b)};
  const double abs_a = std::abs(a);
  const double norm = std::hypot(abs_a, std::abs(b));
  const Complex phase = a / abs_a;
  return {abs_a / norm, phase * std::conj(b) / norm};
}

void rotate_rows(ComplexMatrix& m, const Rotation& g, std::size_t p, std::size_t q,
                 std::size_t col_begin, std::size_t col_end) {
  for (std::size_t j = col_begin; j < col_end; ++j) {
    const Complex x = m(p, j);
    const Complex y = m(q, j);
    m(p, j) = g.c * x + g.s * y;
    m(q, j) = -std::conj(g.s) * x + g.c * y;
  }
}

// Right multiplication by G^H restricted to rows [row_begin, row_end).
void rotate_cols(ComplexMatrix& m, const Rotation& g, std::size_t p, std::size_t q,
                 std::size_t row_begin, std::size_t row_end) {
  for (std::size_t i = row_begin; i < row_end; ++i) {
    const Complex x = m(i, p);
    const Complex y = m(i, q);
    m(i, p) = g.c * x + std::conj(g.s) * y;
    m(i, q) = -g.s * x + g.c * y;
  }
}

// Reduces `a` to upper Hessenberg form in place and accumulates the unitary
// similarity into `q` (a_original = q a q^H).
void reduce_to_hessenberg(ComplexMatrix& a, ComplexMatrix& q) {
  const std::size_t n = a.dim();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    ComplexVector v(len);
    double tail = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      v[i] = a(k + 1 + i, k);
      if (i > 0) tail += std::norm(v[i]);
    }
    if (tail == 0.0) continue;
    const double xnorm = std::sqrt(tail + std::norm(v[0]));
    const Complex phase = (v[0] == 0.0) ? Complex(1.0) : v[0] / std::abs(v[0]);
    const Complex beta = -phase * xnorm;
    v[0] -= beta;
    const double vnorm = norm2(v);
    for (auto& z : v) z /= vnorm;

    // a <- H a on rows k+1..n-1
    for (std::size_t j = k; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < len; ++i) s += std::conj(v[i]) * a(k + 1 + i, j);
      for (std::size_t i = 0; i < len; ++i) a(k + 1 + i, j) -= 2.0 * v[i] * s;
    }
    // a <- a H and q <- q H on columns k+1..n-1
    auto apply_right = [&](ComplexMatrix& m) {
      for (std::size_t r = 0; r < n; ++r) {
        Complex s = 0.0;
        for (std::size_t i = 0; i < len; ++i) s += m(r, k + 1 + i) * v[i];
        for (std::size_t i = 0; i < len; ++i) m(r, k + 1 + i) -= 2.0 * s * std::conj(v[i]);
      }
    };
    apply_right(a);
    apply_right(q);
    a(k + 1, k) = beta;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

Complex wilkinson_shift(const ComplexMatrix& t, std::size_t hi) {
  const Complex a = t(hi - 1, hi - 1);
  const Complex b = t(hi - 1, hi);
  const Complex c = t(hi, hi - 1);
  const Complex d = t(hi, hi);
  const Complex half = 0.5 * (a - d);
  const Complex disc = std::sqrt(half * half + b * c);
  const Complex mu1 = 0.5 * (a + d) + disc;
  const Complex mu2 = 0.5 * (a + d) - disc;
  return std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
}

// Drives Hessenberg `t` to upper triangular Schur form; `z` accumulates the
// right rotations.
void schur_iterate(ComplexMatrix& t, ComplexMatrix& z) {
  const std::size_t n = t.dim();
  if (n < 2) return;
  const std::size_t max_iterations = 30 * n;
  std::size_t total = 0;
  std::size_t since_deflation = 0;
  const double scale = std::max(norm_fro(t), std::numeric_limits<double>::min());
  std::size_t hi = n - 1;
  std::vector<Rotation> rotations(n);

  while (hi > 0) {
    std::size_t lo = hi;
    while (lo > 0) {
      double diag = std::abs(t(lo - 1, lo - 1)) + std::abs(t(lo, lo));
      if (diag == 0.0) diag = scale;
      if (std::abs(t(lo, lo - 1)) <= kEps * diag) {
        t(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      --hi;
      since_deflation = 0;
      continue;
    }
    if (++total > max_iterations) {
      throw NumericalError("eigendecompose: QR iteration did not converge after " +
                           std::to_string(max_iterations) + " sweeps");
    }
    ++since_deflation;

    Complex mu;
    if (since_deflation % 10 == 0) {
      // Exceptional shift to break cycles.
      mu = t(hi, hi) + 0.75 * std::abs(t(hi, hi - 1));
    } else {
      mu = wilkinson_shift(t, hi);
    }

    for (std::size_t k = lo; k <= hi; ++k) t(k, k) -= mu;
    for (std::size_t k = lo; k < hi; ++k) {
      const Rotation g = make_rotation(t(k, k), t(k + 1, k));
      rotations[k] = g;
      rotate_rows(t, g, k, k + 1, k, n);
      t(k + 1, k) = 0.0;
    }
    for (std::size_t k = lo; k < hi; ++k) {
      rotate_cols(t, rotations[k], k, k + 1, 0, std::min(k + 2, hi) + 1);
      rotate_cols(z, rotations[k], k, k + 1, 0, n);
    }
    for (std::size_t k = lo; k <= hi; ++k) t(k, k) += mu;
  }
}

// Eigenvectors of the upper triangular Schur factor.
std::vector<ComplexVector> triangular_eigenvectors(const ComplexMatrix& t) {
  const std::size_t n = t.dim();
  const double small = std::max(kEps * norm_fro(t), std::numeric_limits<double>::min());
  std::vector<ComplexVector> out(n, ComplexVector(n));
  for (std::size_t k = 0; k < n; ++k) {
    ComplexVector& x = out[k];
    const Complex lambda = t(k, k);
    x[k] = 1.0;
    for (std::size_t j = k; j-- > 0;) {
      Complex s = 0.0;
      for (std::size_t l = j + 1; l <= k; ++l) s += t(j, l) * x[l];
      Complex d = t(j, j) - lambda;
      if (std::abs(d) < small) d = small;
      x[j] = -s / d;
      const double size = std::abs(x[j]);
      if (size > 1e100) {
        for (std::size_t l = j; l <= k; ++l) x[l] /= size;
      }
    }
  }
  return out;
}

ComplexVector normalized_with_canonical_phase(ComplexVector v) {
  const double nrm = norm2(v);
  if (nrm == 0.0) throw NumericalError("eigendecompose: zero eigenvector");
  std::size_t lead = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[lead])) lead = i;
  const Complex phase = std::conj(v[lead]) / std::abs(v[lead]);
  for (auto& z : v) z *= phase / nrm;
  return v;
}

double residual_of(const ComplexMatrix& m, Complex value, std::span<const Complex> v) {
  ComplexVector r = mat_vec(m, v);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= value * v[i];
  return norm2(r);
}

// Sorts by real part, then by imaginary part among entries whose real parts
// agree to rounding.
void sort_pairs(std::vector<EigenPair>& pairs, double scale) {
  std::sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    return a.value.real() < b.value.real();
  });
  const double tie = 64.0 * kEps * std::max(scale, 1.0);
  std::size_t begin = 0;
  while (begin < pairs.size()) {
    std::size_t end = begin + 1;
    while (end < pairs.size() &&
           pairs[end].value.real() - pairs[end - 1].value.real() <= tie) {
      ++end;
    }
    std::stable_sort(pairs.begin() + static_cast<std::ptrdiff_t>(begin),
                     pairs.begin() + static_cast<std::ptrdiff_t>(end),
                     [](const EigenPair& a, const EigenPair& b) {
                       return a.value.imag() < b.value.imag();
                     });
    begin = end;
  }
}

// Orthonormalises a cluster under the Hermitian product. Leaves it untouched
// if that would destroy the eigenvector property (defective cluster).
void orthonormalize_cluster(const ComplexMatrix& m, std::vector<EigenPair>& pairs,
                            const std::vector<std::size_t>& cluster, double tol) {
  std::vector<ComplexVector> basis;
  for (std::size_t idx : cluster) {
    ComplexVector v = pairs[idx].vector;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const Complex proj = hdot(b, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * b[i];
      }
    }
    const double nrm = norm2(v);
    if (nrm < 1e-6) return;
    for (auto& z : v) z /= nrm;
    basis.push_back(std::move(v));
  }
  std::vector<double> residuals;
  for (std::size_t k = 0; k < cluster.size(); ++k) {
    const double r = residual_of(m, pairs[cluster[k]].value, basis[k]);
    if (r > tol) return;
    residuals.push_back(r);
  }
  for (std::size_t k = 0; k < cluster.size(); ++k) {
    pairs[cluster[k]].vector = normalized_with_canonical_phase(std::move(basis[k]));
    pairs[cluster[k]].residual = residuals[k];
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> cluster_eigenvalues(const std::vector<Complex>& values,
                                                          double radius) {
  const std::size_t n = values.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(values[i] - values[j]) <= radius) parent[find(j)] = find(i);

  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[root])].push_back(i);
  }
  return groups;
}

std::vector<EigenPair> eigendecompose(const ComplexMatrix& m, double tol) {
  const std::size_t n = m.dim();
  if (n == 0) throw InvalidArgument("eigendecompose: empty matrix");
  for (const auto& z : m.entries()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NumericalError("eigendecompose: matrix has non-finite entries");
    }
  }

  ComplexMatrix t(m);
  ComplexMatrix z = ComplexMatrix::identity(n);
  reduce_to_hessenberg(t, z);
  schur_iterate(t, z);
  const std::vector<ComplexVector> local = triangular_eigenvectors(t);

  std::vector<EigenPair> pairs(n);
  for (std::size_t k = 0; k < n; ++k) {
    pairs[k].value = t(k, k);
    pairs[k].vector = normalized_with_canonical_phase(mat_vec(z, local[k]));
    pairs[k].residual = residual_of(m, pairs[k].value, pairs[k].vector);
  }

  const double scale = norm_fro(m);
  sort_pairs(pairs, scale);

  std::vector<Complex> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = pairs[k].value;
  for (const auto& cluster : cluster_eigenvalues(values, kClusterRadius * scale)) {
    if (cluster.size() > 1) orthonormalize_cluster(m, pairs, cluster, tol);
  }

  for (const auto& p : pairs) {
    if (!(p.residual <= tol)) {
      throw NumericalError("eigendecompose: residual " + std::to_string(p.residual) +
                           " exceeds tolerance");
    }
  }
  return pairs;
}

SpectralExponential::SpectralExponential(const ComplexMatrix& m, double tol)
    : pairs_(eigendecompose(m, tol)) {
  std::vector<ComplexVector> cols;
  cols.reserve(pairs_.size());
  for (const auto& p : pairs_) cols.push_back(p.vector);
  basis_ = ComplexMatrix::from_columns(cols);
  condition_ = condition_number(basis_);
  if (!(condition_ < kMaxEigenbasisCondition)) {
    throw ExceptionalPointError("matrix exponential: eigenvector matrix is numerically singular "
                                "(condition " + std::to_string(condition_) + ")");
  }
  basis_inverse_ = inverse(basis_);
}

ComplexMatrix SpectralExponential::operator()(Complex scalar) const {
  const std::size_t n = basis_.dim();
  ComplexMatrix scaled_basis(basis_);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex f = std::exp(scalar * pairs_[j].value);
    for (std::size_t i = 0; i < n; ++i) scaled_basis(i, j) *= f;
  }
  return mat_mul(scaled_basis, basis_inverse_);
}

ComplexVector SpectralExponential::apply(Complex scalar, std::span<const Complex> v) const {
  ComplexVector coeffs = mat_vec(basis_inverse_, v);
  for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] *= std::exp(scalar * pairs_[j].value);
  return mat_vec(basis_, coeffs);
}

ComplexMatrix mat_exp_times(const ComplexMatrix& m, Complex scalar, double tol) {
  return SpectralExponential(m, tol)(scalar);
}

}  // namespace ptmat
