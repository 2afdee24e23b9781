#include "ptmat/analytic.hpp"

#include <cmath>

#include "ptmat/errors.hpp"

namespace ptmat::analytic {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_unbroken(const TwoByTwoParams& p) {
  const double s2 = p.s * p.s;
  const double t2 = p.t * p.t;
  if (s2 == t2) throw ExceptionalPointError("2x2 oracle: s^2 = t^2 is an exceptional point");
  if (s2 > t2) throw InvalidArgument("2x2 oracle: requires s^2 < t^2 (unbroken phase)");
}

}  // namespace

ComplexMatrix h2(const TwoByTwoParams& p) {
  const double c = std::cos(p.phi);
  const double s = std::sin(p.phi);
  const Complex off = kI * p.s * c + p.t * s;
  return ComplexMatrix(2, {p.r + p.t * c - kI * p.s * s, off, off, p.r - p.t * c + kI * p.s * s});
}

ComplexMatrix p2(double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return ComplexMatrix(2, {c, s, s, -c});
}

ComplexMatrix p3(const ThreeByThreeParityParams& params) {
  const double cp = std::cos(params.phi);
  const double sp = std::sin(params.phi);
  const double s2p = std::sin(2.0 * params.phi);
  const double c2p = std::cos(2.0 * params.phi);
  const double ct = std::cos(params.theta);
  const double st = std::sin(params.theta);
  const double c2t = std::cos(2.0 * params.theta);
  const double s2t = std::sin(2.0 * params.theta);
  return ComplexMatrix(3, {
                              cp * cp - sp * sp * c2t, s2p * ct, -sp * sp * s2t,
                              s2p * ct, -c2p, s2p * st,
                              -sp * sp * s2t, s2p * st, cp * cp + sp * sp * c2t,
                          });
}

Complex cos_alpha(const TwoByTwoParams& p) {
  if (p.t == 0.0) throw InvalidArgument("cos_alpha: t must be non-zero");
  const double ratio = p.s / p.t;
  const double gap = 1.0 - ratio * ratio;
  if (gap >= 0.0) return std::sqrt(gap);
  return kI * std::copysign(std::sqrt(-gap), p.t);
}

std::pair<Complex, Complex> eig2(const TwoByTwoParams& p) {
  if (p.t == 0.0) {
    const Complex root = std::sqrt(Complex(-p.s * p.s, 0.0));
    return {p.r + root, p.r - root};
  }
  const Complex tc = p.t * cos_alpha(p);
  return {p.r + tc, p.r - tc};
}

std::pair<ComplexVector, ComplexVector> vec2(const TwoByTwoParams& p) {
  require_unbroken(p);
  const double ca = cos_alpha(p).real();
  const double sa = p.s / p.t;
  const double ch = std::cos(0.5 * p.phi);
  const double sh = std::sin(0.5 * p.phi);

  // |eps+): sin(alpha)/sqrt(1 - cos(alpha)) = sgn(sin(alpha)) sqrt(1 + cos(alpha)) removes
  // the 0/0 at alpha = 0 (s = 0 is taken from the s -> 0+ side).
  const double sign = std::signbit(sa) ? -1.0 : 1.0;
  const double lead = sign * std::sqrt(1.0 + ca);
  const double tail = std::sqrt(1.0 - ca);
  const double norm_plus = 1.0 / std::sqrt(2.0 * ca);
  ComplexVector plus{norm_plus * (lead * ch - kI * tail * sh), norm_plus * (lead * sh + kI * tail * ch)};

  const double norm_minus = 1.0 / std::sqrt(2.0 * (1.0 + ca) * ca);
  ComplexVector minus{norm_minus * (sa * ch - kI * (1.0 + ca) * sh),
                      norm_minus * (sa * sh + kI * (1.0 + ca) * ch)};
  return {std::move(plus), std::move(minus)};
}

ComplexMatrix c2(const TwoByTwoParams& p) {
  require_unbroken(p);
  const double ca = cos_alpha(p).real();
  const double sa = p.s / p.t;
  const double cf = std::cos(p.phi);
  const double sf = std::sin(p.phi);
  const Complex off = sf + kI * sa * cf;
  ComplexMatrix c(2, {cf - kI * sa * sf, off, off, -cf + kI * sa * sf});
  return (1.0 / ca) * c;
}

}  // namespace ptmat::analytic
