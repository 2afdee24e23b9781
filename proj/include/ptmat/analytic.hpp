#pragma once

#include <utility>

#include "ptmat/complex_matrix.hpp"

namespace ptmat::analytic {

// Closed forms for the two- and three-dimensional constructions. These serve
// as ground truth for the numerical modules.

/// Parameters of the general 2x2 PT-symmetric Hamiltonian. With sin(alpha) = s/t
/// the symmetry is unbroken for s^2 < t^2 and exceptional at s^2 = t^2.
struct TwoByTwoParams {
  double r = 0.0;
  double s = 0.0;
  double t = 1.0;
  double phi = 0.0;
};

/// Angles of the general 3x3 parity with signature (2, 1).
struct ThreeByThreeParityParams {
  double phi = 0.0;
  double theta = 0.0;
};

/// [[r + t cos(phi) - i s sin(phi), i s cos(phi) + t sin(phi)],
///  [i s cos(phi) + t sin(phi), r - t cos(phi) + i s sin(phi)]]
ComplexMatrix h2(const TwoByTwoParams& params);

/// [[cos(phi), sin(phi)], [sin(phi), -cos(phi)]]
ComplexMatrix p2(double phi);

ComplexMatrix p3(const ThreeByThreeParityParams& params);

/// cos(alpha) for sin(alpha) = s/t. Real and non-negative for |s| <= |t|;
/// i sgn(t) sqrt(s^2/t^2 - 1) beyond, so that eps+ has positive imaginary part.
Complex cos_alpha(const TwoByTwoParams& params);

/// (eps+, eps-) = r +- t cos(alpha). For t = 0 uses r +- sqrt(t^2 - s^2)
/// directly, ordered so eps+ has the non-negative imaginary part.
std::pair<Complex, Complex> eig2(const TwoByTwoParams& params);

/// PT-invariant eigenvectors (|eps+), |eps-)) with PT norms +1 and -1.
/// Throws ExceptionalPointError at s^2 = t^2 and InvalidArgument when s^2 > t^2.
std::pair<ComplexVector, ComplexVector> vec2(const TwoByTwoParams& params);

/// (1/cos(alpha)) [[cos(phi) - i sin(alpha) sin(phi), sin(phi) + i sin(alpha) cos(phi)],
///                 [sin(phi) + i sin(alpha) cos(phi), -cos(phi) + i sin(alpha) sin(phi)]]
/// Same error contract as vec2.
ComplexMatrix c2(const TwoByTwoParams& params);

}  // namespace ptmat::analytic
