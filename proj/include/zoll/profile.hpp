// zollgeo: deformation profiles kappa and their derived quantities.

// A profile is a smooth real function kappa(t) entering the metric through
//   f(y) = (1 - (shift + kappa(y))^2) / w(y),
// where w = y^2 (parabolic), y^2+1 (elliptic), or y^2-1 (hyperbolic).
// Everything downstream needs, besides plain values:
//   * derivatives up to order 6 (curvature, series fallbacks),
//   * the regularized ratios kappa/y^2 and kappa/(y^2-1) near their
//     removable singularities,
//   * the primitive of kappa(s)/s^2 vanishing at 0 and its limit at -infinity
//     (the null-leaf asymptote data of the conformal layer).

#ifndef ZOLL_PROFILE_HPP_
#define ZOLL_PROFILE_HPP_

// C++ headers
#include <vector>     // vector

// zollgeo headers
#include "zoll/jet.hpp"  // Jet, window

namespace zoll {

//----------------------------------------------------------------------------
// Building blocks

// One additive term: (polynomial in t) * plateau window W(t; l0,l1,r1,r0).
struct ProfileTerm {
  std::vector<double> poly;  // coefficients, constant first
  double l0, l1, r1, r0;     // window knots, l0 < l1 <= r1 < r0
};

// One quintic-spline knot: value and first two derivatives at t.
struct SplineKnot {
  double t, value, d1, d2;
};

//----------------------------------------------------------------------------

// Smooth deformation profile.  Immutable after construction; all queries are
// pure and thread-safe.
class KappaProfile {
 public:
  // The identically-zero profile (undeformed metric).
  static KappaProfile zero();

  // amplitude * t^3 / (1 + t^4): odd, bounded, with closed-form primitive
  //   integral_0^t s/(1+s^4) ds * amplitude = amplitude/2 * atan(t^2).
  static KappaProfile odd_rational(double amplitude);

  // Sum of polynomial-times-window terms (compactly supported, C-infinity).
  static KappaProfile terms(std::vector<ProfileTerm> terms);

  // Piecewise quintic Hermite spline through the given knots (ascending t),
  // zero outside the knot range; end data should taper to zero for a smooth
  // extension.
  static KappaProfile spline(std::vector<SplineKnot> knots);

  //--------------------------------------------------------------------------
  // Point queries

  double value(double t) const { return jet(t).value(); }
  double derivative(double t, int order) const;  // 0 <= order <= 6
  Jet6 jet(double t) const;                      // value + 6 derivatives

  //--------------------------------------------------------------------------
  // Integral queries

  // integral_0^t kappa(s)/s^2 ds.  Well-defined when kappa(0)=kappa'(0)=0;
  // the integrand at s=0 is taken to be kappa''(0)/2.
  double primitive_over_square(double t) const;

  // Limit of primitive_over_square at t -> -infinity (finite for compactly
  // supported profiles and for the odd rational builtin).
  double limit_at_minus_infinity() const;

  //--------------------------------------------------------------------------
  // Structure queries

  // Points where the defining formula changes piece (window/spline knots),
  // ascending.  Quadratures split here.  Empty for zero and odd_rational.
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  // Radius R with kappa supported in [-R, R] (for builtins with unbounded
  // support, a radius beyond which the profile is negligible for grid scans).
  double support_radius() const;

  bool is_zero() const { return kind_ == Kind::kZero; }

 private:
  enum class Kind { kZero, kOddRational, kTerms, kSpline };

  KappaProfile() = default;

  Kind kind_ = Kind::kZero;
  double amplitude_ = 0.0;             // odd_rational
  std::vector<ProfileTerm> terms_;     // terms
  std::vector<SplineKnot> knots_;      // spline
  std::vector<std::array<double, 6>> piece_coeffs_;  // spline pieces, monomial in (t - t_i)
  std::vector<double> breakpoints_;
};

//----------------------------------------------------------------------------
// Regularized ratios
//
// Both return value and first two derivatives of the ratio; within a guard
// radius of the removable singularity they switch to the Taylor series of
// kappa at the singular point, so no accuracy is lost to cancellation.

inline constexpr double kRatioGuard = 1e-3;

// kappa(y)/y^2 (removable at y=0 when kappa has a double zero there).
Jet<2> ratio_over_square(const KappaProfile& kappa, double y);

// kappa(y)/(y^2-1) (removable at y=±1 when kappa vanishes there).
Jet<2> ratio_over_square_minus_one(const KappaProfile& kappa, double y);

//----------------------------------------------------------------------------

// Metric dy^2-coefficient built from a profile:
//   f(y) = (1 - (shift + kappa(y))^2) / w(y)
// with shift = 1 and w = y^2 (parabolic), shift = 1 and w = y^2-1
// (hyperbolic), shift = p*tau/(2*pi*q) and w = y^2+1 (elliptic).  The
// parabolic/hyperbolic variants evaluate through the regularized ratios, so
// the removable singularities at y=0 / y=±1 return the correct limits
// (e.g. parabolic f(0) = -kappa''(0)).
enum class Family { kParabolic, kElliptic, kHyperbolic };

double f_from_kappa(Family family, const KappaProfile& kappa, double shift, double y);

// Same, with the first derivative (needed by curvature and the geodesic ODE).
struct ValueAndDerivative {
  double value;
  double derivative;
};
ValueAndDerivative f_from_kappa_d(Family family, const KappaProfile& kappa,
                                  double shift, double y);

}  // namespace zoll

#endif  // ZOLL_PROFILE_HPP_
