#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "ptmat/complex_matrix.hpp"
#include "ptmat/eigensolver.hpp"
#include "ptmat/errors.hpp"
#include "test_support.hpp"

namespace ptmat {
namespace {

using testing::random_matrix;

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) e(i, j) = m(i, j);
  return e;
}

// Taylor series with scaling and squaring; independent of the eigensolver.
ComplexMatrix taylor_exp(const ComplexMatrix& m, Complex scalar) {
  const double norm = std::abs(scalar) * norm_inf(m);
  const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm + 1.0))) + 1);
  const ComplexMatrix a = (scalar / std::ldexp(1.0, squarings)) * m;
  ComplexMatrix term = ComplexMatrix::identity(m.dim());
  ComplexMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = (1.0 / k) * mat_mul(term, a);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = mat_mul(sum, sum);
  return sum;
}

TEST(ComplexMatrix, RejectsWrongEntryCount) {
  EXPECT_THROW(ComplexMatrix(2, {1.0, 2.0, 3.0}), InvalidArgument);
}

TEST(ComplexMatrix, MultiplyMismatchThrows) {
  EXPECT_THROW(mat_mul(ComplexMatrix(2), ComplexMatrix(3)), InvalidArgument);
}

TEST(ComplexMatrix, TransposeConjAdjoint) {
  const ComplexMatrix m(2, {Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8)});
  EXPECT_EQ(m.transpose()(0, 1), Complex(5, 6));
  EXPECT_EQ(m.conj()(1, 0), Complex(5, -6));
  EXPECT_EQ(m.adjoint()(0, 1), Complex(5, -6));
  EXPECT_EQ(m.trace(), Complex(8, 10));
}

TEST(ComplexMatrix, Predicates) {
  const ComplexMatrix sym(2, {1.0, Complex(0, 1), Complex(0, 1), 2.0});
  EXPECT_TRUE(sym.is_symmetric());
  EXPECT_FALSE(sym.is_hermitian());
  EXPECT_FALSE(sym.is_real());
  const ComplexMatrix rot(2, {0.6, -0.8, 0.8, 0.6});
  EXPECT_TRUE(rot.is_orthogonal());
  EXPECT_TRUE(rot.is_real());
}

TEST(ComplexMatrix, Norms) {
  const ComplexMatrix m(2, {1.0, -2.0, 3.0, Complex(0, 4)});
  EXPECT_DOUBLE_EQ(max_abs(m), 4.0);
  EXPECT_DOUBLE_EQ(norm_inf(m), 7.0);
  EXPECT_DOUBLE_EQ(norm_one(m), 6.0);
  EXPECT_DOUBLE_EQ(norm_fro(m), std::sqrt(30.0));
}

TEST(ComplexMatrix, InverseProperty) {
  Rng rng(11);
  for (std::size_t d = 1; d <= 8; ++d) {
    const ComplexMatrix m = random_matrix(d, rng);
    const ComplexMatrix prod = mat_mul(m, inverse(m));
    EXPECT_LT(max_abs(prod - ComplexMatrix::identity(d)), 1e-12 * condition_number(m)) << d;
  }
}

TEST(ComplexMatrix, SingularInverseThrows) {
  const ComplexMatrix m(2, {1.0, 2.0, 2.0, 4.0});
  EXPECT_THROW(inverse(m), SingularMatrixError);
  EXPECT_TRUE(std::isinf(condition_number(m)));
}

TEST(ComplexMatrix, VectorProducts) {
  const ComplexVector u{Complex(0, 1), 1.0};
  EXPECT_EQ(dot(u, u), Complex(0.0));  // self-orthogonal under the bilinear form
  EXPECT_EQ(hdot(u, u), Complex(2.0));
  const ComplexMatrix o = outer(u, u);
  EXPECT_EQ(o(0, 0), Complex(-1.0));
  EXPECT_EQ(o(0, 1), Complex(0, 1));
}

TEST(Eigensolver, MatchesEigenOnRandomMatrices) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + trial % 10;
    const ComplexMatrix m = random_matrix(d, rng);
    const auto pairs = eigendecompose(m);
    ASSERT_EQ(pairs.size(), d);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ref(to_eigen(m), false);
    std::vector<Complex> expected(ref.eigenvalues().data(), ref.eigenvalues().data() + d);
    // Match greedily: each reference value must be found once.
    for (const auto& pair : pairs) {
      auto best = std::min_element(expected.begin(), expected.end(), [&](Complex a, Complex b) {
        return std::abs(a - pair.value) < std::abs(b - pair.value);
      });
      EXPECT_LT(std::abs(*best - pair.value), 1e-10);
      expected.erase(best);
    }
  }
}

TEST(Eigensolver, ResidualsAndNormalisation) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 11;
    const ComplexMatrix m = random_matrix(d, rng);
    for (const auto& pair : eigendecompose(m)) {
      const ComplexVector r = subtract(mat_vec(m, pair.vector), scaled(pair.vector, pair.value));
      EXPECT_LT(norm2(r), 1e-10);
      EXPECT_NEAR(norm2(pair.vector), 1.0, 1e-12);
    }
  }
}

TEST(Eigensolver, SortedByRealThenImaginary) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pairs = eigendecompose(random_matrix(7, rng));
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      EXPECT_LE(pairs[k - 1].value.real(), pairs[k].value.real() + 1e-12);
    }
  }
}

TEST(Eigensolver, TraceAndDeterminantMatchLeibniz) {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 6;
    const ComplexMatrix m = random_matrix(d, rng);
    Complex sum = 0.0;
    Complex prod = 1.0;
    for (const auto& pair : eigendecompose(m)) {
      sum += pair.value;
      prod *= pair.value;
    }
    EXPECT_LT(std::abs(sum - m.trace()), 1e-11);
    EXPECT_LT(std::abs(prod - testing::leibniz_det(m)), 1e-10);
  }
}

TEST(Eigensolver, DiagonalAndTriangular) {
  const ComplexMatrix m(3, {3.0, 1.0, 2.0, 0.0, -1.0, 5.0, 0.0, 0.0, Complex(0, 2)});
  const auto pairs = eigendecompose(m);
  EXPECT_NEAR(std::abs(pairs[0].value - Complex(-1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(pairs[1].value - Complex(0, 2)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(pairs[2].value - Complex(3.0)), 0.0, 1e-14);
}

TEST(Eigensolver, DegenerateClusterIsOrthonormal) {
  const ComplexMatrix m = ComplexMatrix::identity(4);
  const auto pairs = eigendecompose(m);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      EXPECT_NEAR(std::abs(hdot(pairs[a].vector, pairs[b].vector)), a == b ? 1.0 : 0.0, 1e-12);
}

TEST(Eigensolver, NonFiniteInputThrows) {
  ComplexMatrix m = ComplexMatrix::identity(2);
  m(0, 1) = std::nan("");
  EXPECT_THROW(eigendecompose(m), NumericalError);
}

TEST(Eigensolver, ClusterGrouping) {
  const std::vector<Complex> values{0.0, 1.0, 1e-10, 2.0, 1.0 + 5e-11};
  const auto groups = cluster_eigenvalues(values, 1e-9);
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(groups[0], (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(groups[1], (std::vector<std::size_t>{1, 4}));
  EXPECT_EQ(groups[2], (std::vector<std::size_t>{3}));
}

TEST(MatrixExponential, AgreesWithTaylorSeries) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + trial % 8;
    const ComplexMatrix m = random_matrix(d, rng);
    const Complex scalar(0.0, -rng.uniform(0.0, 3.0));
    const ComplexMatrix expected = taylor_exp(m, scalar);
    EXPECT_LT(max_abs(mat_exp_times(m, scalar) - expected), 1e-9 * std::max(1.0, max_abs(expected)));
  }
}

TEST(MatrixExponential, GroupProperties) {
  Rng rng(9);
  const ComplexMatrix m = random_matrix(6, rng);
  const SpectralExponential exp(m);
  EXPECT_LT(max_abs(exp(0.0) - ComplexMatrix::identity(6)), 1e-12);
  const Complex a(0, -0.7);
  const Complex b(0, -1.9);
  EXPECT_LT(max_abs(mat_mul(exp(a), exp(b)) - exp(a + b)), 1e-10);
  EXPECT_LT(max_abs(mat_mul(exp(a), exp(-a)) - ComplexMatrix::identity(6)), 1e-10);
  const ComplexVector v = testing::random_unit_vector(6, rng);
  const ComplexVector direct = mat_vec(exp(a), v);
  EXPECT_LT(norm2(subtract(exp.apply(a, v), direct)), 1e-12);
}

TEST(MatrixExponential, HermitianGivesUnitary) {
  Rng rng(10);
  const ComplexMatrix h = testing::random_hermitian(5, rng);
  const ComplexMatrix u = mat_exp_times(h, Complex(0, -2.5));
  EXPECT_LT(max_abs(mat_mul(u.adjoint(), u) - ComplexMatrix::identity(5)), 1e-12);
}

TEST(MatrixExponential, DefectiveMatrixThrows) {
  const ComplexMatrix jordan(2, {1.0, 1.0, 0.0, 1.0});
  EXPECT_THROW(SpectralExponential{jordan}, ExceptionalPointError);
}

}  // namespace
}  // namespace ptmat
