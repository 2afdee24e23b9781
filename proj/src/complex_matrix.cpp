#include "ptmat/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ptmat/errors.hpp"

namespace ptmat {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) {
    throw InvalidArgument("ComplexMatrix: expected " + std::to_string(dim_ * dim_) +
                          " entries, got " + std::to_string(entries_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_columns(std::span<const ComplexVector> cols) {
  const std::size_t n = cols.size();
  ComplexMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    require_same_dim(cols[j].size(), n, "from_columns");
    for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t j) const {
  ComplexVector c(dim_);
  for (std::size_t i = 0; i < dim_; ++i) c[i] = (*this)(i, j);
  return c;
}

ComplexVector ComplexMatrix::row(std::size_t i) const {
  return ComplexVector(entries_.begin() + static_cast<std::ptrdiff_t>(i * dim_),
                       entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim_));
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix c(*this);
  for (auto& z : c.entries_) z = std::conj(z);
  return c;
}

ComplexMatrix ComplexMatrix::adjoint() const { return transpose().conj(); }

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::is_symmetric(double tol) const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool ComplexMatrix::is_real(double tol) const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [tol](const Complex& z) { return std::abs(z.imag()) <= tol; });
}

bool ComplexMatrix::is_orthogonal(double tol) const {
  const ComplexMatrix gram = mat_mul(transpose(), *this);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if (std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)) > tol) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(dim_, rhs.dim_, "operator+");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(dim_, rhs.dim_, "operator-");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : entries_) z *= scalar;
  return *this;
}

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "mat_mul");
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

ComplexVector mat_vec(const ComplexMatrix& a, std::span<const Complex> v) {
  require_same_dim(a.dim(), v.size(), "mat_vec");
  ComplexVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_mul(a, b); }
ComplexMatrix operator*(Complex scalar, ComplexMatrix a) { return a *= scalar; }
ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v) { return mat_vec(a, v); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return mat_mul(a, b) - mat_mul(b, a);
}

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (const auto& z : m.entries()) best = std::max(best, std::abs(z));
  return best;
}

double norm_inf(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

double norm_one(const ComplexMatrix& m) { return norm_inf(m.transpose()); }

double norm_fro(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix inverse(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix lu(m);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (lu(piv, k) == 0.0) throw SingularMatrixError("inverse: matrix is singular");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(perm[k], perm[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      lu(i, k) /= lu(k, k);
      const Complex f = lu(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }

  ComplexMatrix inv(n);
  for (std::size_t col = 0; col < n; ++col) {
    ComplexVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (perm[i] == col) ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
      x[i] /= lu(i, i);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
  }
  return inv;
}

double condition_number(const ComplexMatrix& m) {
  try {
    return norm_one(m) * norm_one(inverse(m));
  } catch (const SingularMatrixError&) {
    return std::numeric_limits<double>::infinity();
  }
}

Complex dot(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_dim(u.size(), v.size(), "dot");
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

Complex hdot(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_dim(u.size(), v.size(), "hdot");
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

ComplexVector conj(std::span<const Complex> v) {
  ComplexVector out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](const Complex& z) { return std::conj(z); });
  return out;
}

ComplexVector scaled(std::span<const Complex> v, Complex s) {
  ComplexVector out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [s](const Complex& z) { return s * z; });
  return out;
}

ComplexVector add(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_dim(u.size(), v.size(), "add");
  ComplexVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + v[i];
  return out;
}

ComplexVector subtract(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_dim(u.size(), v.size(), "subtract");
  ComplexVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - v[i];
  return out;
}

ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_dim(u.size(), v.size(), "outer");
  ComplexMatrix m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
  return m;
}

}  // namespace ptmat
