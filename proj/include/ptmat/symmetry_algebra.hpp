#pragma once

#include <vector>

#include "ptmat/complex_matrix.hpp"
#include "ptmat/construction.hpp"

namespace ptmat {

/// The C operator of an unbroken PT-symmetric system.
struct COperator {
  ComplexMatrix matrix;
};

/// Metric that makes a (possibly non-orthogonal) eigenbasis PT-orthonormal.
struct WeightMatrix {
  ComplexMatrix matrix;
};

/// PT conjugate [P v*]^T, returned as the entries of a row vector.
ComplexVector pt_conjugate(std::span<const Complex> v, const ComplexMatrix& p);

/// (a|b) = [PT a]^T b. Indefinite; (a|b)* = (b|a).
Complex pt_inner(std::span<const Complex> a, std::span<const Complex> b, const ComplexMatrix& p);

/// Scales v by 1/sqrt(|(v|v)|). The sign of the PT norm is left alone.
/// Throws ExceptionalPointError when |(v|v)| < tol * |v|^2.
ComplexVector pt_normalize(std::span<const Complex> v, const ComplexMatrix& p,
                           double tol = kDefaultTol);

/// C = sum_n |e_n)(e_n| over the phase-fixed, PT-normalised eigenvectors.
///
/// Throws BrokenPhaseError for a broken system and ExceptionalPointError at
/// (or numerically at) an exceptional point.
COperator build_c_operator(const PTSystem& sys, double tol = kDefaultTol);

/// <a|b> = [C P a*]^T b. Positive definite on an unbroken system.
Complex cpt_inner(std::span<const Complex> a, std::span<const Complex> b, const COperator& c,
                  const ComplexMatrix& p);

/// Solves (e_m|W|e_n) = delta_mn for W over the given eigenbasis.
///
/// With L the matrix of PT-conjugate rows and V the matrix of columns, W is
/// L^-1 V^-1. Throws SingularMatrixError when either factor has condition
/// number 1e8 or more.
WeightMatrix build_weight_matrix(const std::vector<ComplexVector>& eigvecs, const ComplexMatrix& p);

}  // namespace ptmat
