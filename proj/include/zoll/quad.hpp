// zollgeo: singular quadrature and the closure/Abel integral functionals.

#ifndef ZOLL_QUAD_HPP_
#define ZOLL_QUAD_HPP_

// C++ headers
#include <functional>  // function

// zollgeo headers
#include "zoll/spec.hpp"  // SurfaceSpec

namespace zoll {

//----------------------------------------------------------------------------

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;   // |Q(2n) - Q(n)| from one node doubling
  long long evaluations = 0;
};

// Gauss-Chebyshev evaluation of the weighted integral
//   integral_{-c}^{c} phi(y) / sqrt(c^2 - y^2) dy
// at 2n nodes, with the n-node value supplying the error estimate.  Nodes
// come in symmetric pairs (+y,-y) summed together, so odd integrands cancel
// exactly.  phi must return finite values on (-c,c); removable singularities
// are the caller's business.  Throws std::runtime_error on a non-finite
// evaluation.
QuadratureResult chebyshev_singular(const std::function<double(double)>& phi,
                                    double c, int n = 256);

//----------------------------------------------------------------------------

// Closure residual of the band of spacelike geodesics with |g(gamma',K)| = c.
// Zero iff the whole band closes up.  Parabolic:
//   integral_{-c}^{c} 2c Sum_j kappa_j(y) / (y^2 sqrt(c^2-y^2)) dy + tau,
// using sqrt(1 - y^2 f_i) - 1 = kappa and the fact that each profile feeds
// exactly two of the 2k charts at fixed sign of y.  Requires c > 0.
double closure_residual_parabolic(const SurfaceSpec& spec, double c, int nodes = 256);

// Elliptic residual (r = p tau / 2 pi q):
//   integral_{-c}^{c} sqrt(c^2+1) (sqrt(1 - f(y)(y^2+1)) - r) / ((1+y^2) sqrt(c^2-y^2)) dy.
// Requires c > 0.
double closure_residual_elliptic(const SurfaceSpec& spec, double c, int nodes = 256);

// Hyperbolic residual for the band through the even chart i0, whose geodesics
// visit the charts sigma = { 2i + (i mod 2) + i0 : i in Z/2kZ }:
//   integral_{-c}^{c} sqrt(c^2-1) Sum_{m in sigma} kappa_{idx(m,y)}(y)
//                     / ((y^2-1) sqrt(c^2-y^2)) dy,
// with the +-1 singularities removed by the same kappa identity.  Requires
// c > 1 and even i0.
double closure_residual_hyperbolic(const SurfaceSpec& spec, double c, int i0 = 0,
                                   int nodes = 256);

// Family dispatcher (i0 is used by the hyperbolic family only).
double closure_residual(const SurfaceSpec& spec, double c, int i0 = 0, int nodes = 256);

// Weighted band integral
//   integral_{-c}^{c} phi(y) / sqrt(c^2 - y^2) dy
// for phi supported in [-radius, radius].  Uses the Chebyshev rule when the
// support fills the band and plain Gauss-Legendre over the support when c is
// comfortably larger (the Chebyshev nodes thin out near y = 0, which ruins
// accuracy for c >> radius).
double weighted_band_integral(const std::function<double(double)>& phi,
                              double c, double radius, int nodes = 256);

//----------------------------------------------------------------------------

// Abel-type transforms of a profile-like function h.
//   H(c) = integral_{-c}^{c} c h(y) / (y^2 sqrt(c^2-y^2)) dy
// (h needs a double zero at 0, or pass the regularized h/y^2 folded into h).
double abel_H(const std::function<double(double)>& h, double c, int nodes = 256);

//   I(a) = integral_0^a H(t) / sqrt(a^2-t^2) dt = integral_0^{pi/2} H(a sin t) dt.
// Satisfies I(a) = pi integral_0^a h(s)/s^2 ds.
double abel_I(const std::function<double(double)>& h, double a, int nodes = 256);

// Hyperbolic analogue, a > 1:
//   J(a) = integral_1^a c H(c) / (sqrt(a^2-c^2) sqrt(c^2-1)) dc,
//   H(c) = sqrt(c^2-1) integral_0^{pi/2} h(c sin t) dt,
// evaluated after the substitution c^2 = a^2 - (a^2-1) sin^2 psi which
// absorbs both endpoint singularities.
double abel_J_hyperbolic(const std::function<double(double)>& h, double a, int nodes = 256);

// Closed-form side of the J identity:
//   (pi/2) integral_0^a h(s) ds
//     - integral_0^1 h(s) arctan( sqrt((1-s^2)/(a^2-1)) ) ds.
double abel_J_identity_rhs(const std::function<double(double)>& h, double a, int nodes = 256);

}  // namespace zoll

#endif  // ZOLL_QUAD_HPP_
