#include <gtest/gtest.h>

#include <cmath>

#include "ptmat/analytic.hpp"
#include "ptmat/dynamics.hpp"
#include "ptmat/errors.hpp"
#include "ptmat/symmetry_algebra.hpp"
#include "test_support.hpp"

namespace ptmat {
namespace {

TEST(PTInner, SelfOrthogonalVectorCannotBeNormalised) {
  // PT v = (1, -1) for P = diag(1, -1).
  const ComplexVector v{1.0, 1.0};
  EXPECT_EQ(pt_inner(v, v, make_p0(1, 1)), Complex(0.0));
  EXPECT_THROW(pt_normalize(v, make_p0(1, 1)), ExceptionalPointError);
  // With P = 1 the PT product is the Hermitian one.
  EXPECT_EQ(pt_inner(ComplexVector{1.0, Complex(0, 1)}, ComplexVector{1.0, Complex(0, 1)}, ComplexMatrix::identity(2)),
            Complex(2.0));
}

TEST(PTInner, NormaliseGivesUnitMagnitude) {
  const ComplexMatrix p = make_p0(1, 1);
  const ComplexVector v{0.0, 3.0};
  EXPECT_NEAR(pt_inner(pt_normalize(v, p), pt_normalize(v, p), p).real(), -1.0, 1e-15);
}

TEST(COperator, MatchesClosedFormTwoByTwo) {
  Rng rng(12);
  for (int k = 0; k < 100; ++k) {
    const analytic::TwoByTwoParams params{rng.uniform(-2, 2), rng.uniform(-0.9, 0.9), 1.0, rng.uniform(0, 6.28)};
    const PTSystem sys(analytic::h2(params), analytic::p2(params.phi));
    EXPECT_LT(max_abs(build_c_operator(sys).matrix - analytic::c2(params)), 1e-10);
  }
}

TEST(COperator, EqualsParityForRealCommutingH) {
  // B = 0: H is real, commutes with P, and C reduces to P.
  Rng rng(13);
  for (int k = 0; k < 20; ++k) {
    const Signature sig{static_cast<std::size_t>(2 + k % 3), static_cast<std::size_t>(1 + k % 2)};
    BlockForm blocks = random_blocks(sig, rng);
    blocks.b = RealMatrix(sig.plus, sig.minus);
    const PTSystem sys = make_pt_system(blocks, random_parity_spec(sig, rng));
    EXPECT_LT(max_abs(build_c_operator(sys).matrix - sys.p()), 1e-9);
  }
}

TEST(COperator, RejectsBrokenAndExceptional) {
  const analytic::TwoByTwoParams broken{0.0, 2.0, 1.0, 0.3};
  EXPECT_THROW(build_c_operator(PTSystem(analytic::h2(broken), analytic::p2(0.3))), BrokenPhaseError);
  const analytic::TwoByTwoParams ep{0.0, 1.0, 1.0, 0.3};
  EXPECT_THROW(build_c_operator(PTSystem(analytic::h2(ep), analytic::p2(0.3))), ExceptionalPointError);
}

// Property over seeded unbroken systems of every dimension 2..8.
TEST(COperatorProperty, AlgebraicIdentities) {
  Rng rng(14);
  std::uint64_t seed = 70;
  for (int k = 0; k < 60; ++k) {
    const std::size_t d = 2 + k % 7;
    const PTSystem sys = testing::next_unbroken(testing::signature_for(d, rng), seed);
    const ComplexMatrix c = build_c_operator(sys).matrix;
    const ComplexMatrix id = ComplexMatrix::identity(d);
    const double scale = std::max(1.0, norm_inf(c));
    EXPECT_LT(norm_inf(mat_mul(c, c) - id), 1e-9 * scale * scale);
    EXPECT_LT(norm_inf(commutator(c, sys.h())), 1e-9 * scale);
    EXPECT_LT(norm_inf(mat_mul(mat_mul(sys.p(), c.conj()), sys.p()) - c), 1e-9 * scale);
    EXPECT_LT(max_abs(c - c.transpose()), 1e-9 * scale);
  }
}

TEST(COperatorProperty, CPTInnerProductIsPositiveDefinite) {
  Rng rng(15);
  std::uint64_t seed = 300;
  for (int k = 0; k < 40; ++k) {
    const std::size_t d = 2 + k % 7;
    const PTSystem sys = testing::next_unbroken(testing::signature_for(d, rng), seed);
    const COperator c = build_c_operator(sys);
    const ComplexVector a = testing::random_unit_vector(d, rng);
    const ComplexVector b = testing::random_unit_vector(d, rng);
    const Complex aa = cpt_inner(a, a, c, sys.p());
    EXPECT_GT(aa.real(), 0.0);
    EXPECT_LT(std::abs(aa.imag()), 1e-10 * aa.real());
    EXPECT_LT(std::abs(cpt_inner(a, b, c, sys.p()) - std::conj(cpt_inner(b, a, c, sys.p()))), 1e-9);
  }
}

TEST(WeightMatrix, EqualsCForSymmetricH) {
  Rng rng(16);
  std::uint64_t seed = 900;
  for (int k = 0; k < 20; ++k) {
    const PTSystem sys = testing::next_unbroken(testing::signature_for(2 + k % 5, rng), seed);
    const ComplexMatrix w = weight_matrix_for(sys.h(), sys.p()).matrix;
    const ComplexMatrix c = build_c_operator(sys).matrix;
    EXPECT_LT(max_abs(w - c), 1e-8 * std::max(1.0, max_abs(c)));
  }
}

TEST(WeightMatrix, RequiresFullBasis) {
  EXPECT_THROW(build_weight_matrix({{1.0, 0.0}}, ComplexMatrix::identity(2)), InvalidArgument);
}

}  // namespace
}  // namespace ptmat
