// zollgeo: chart atlas — transition maps, metric coefficients, curvature,
// null directions, the hole-filling chart, Moebius involutions, and the
// Blaschke blended metric in ambient hyperboloid coordinates.

#ifndef ZOLL_ATLAS_HPP_
#define ZOLL_ATLAS_HPP_

// C++ headers
#include <array>      // array
#include <utility>    // pair

// zollgeo headers
#include "zoll/spec.hpp"  // SurfaceSpec, ChartPoint, MetricCoeffs, TangentVector

namespace zoll {

//----------------------------------------------------------------------------

// Index of the profile entering f on chart `chart` at height y.  Adjacent
// charts share the same profile on their overlap strip, which is what makes
// the transition maps isometries.
int profile_index(const SurfaceSpec& spec, int chart, double y);

// Chart change Phi_{from,to}.  The pair must be adjacent in the family's
// gluing pattern and y must lie in the shared strip (parabolic: y>0 for the
// even-to-next pairs, y<0 for the odd ones; hyperbolic: y>1, |y|<1, y<-1 for
// the three pair types).  The spec's tau enters only the designated wrap-
// around transitions.  Every map is an involution: applying it twice (with
// the indices swapped) restores the point exactly.
ChartPoint transition(const SurfaceSpec& spec, int from, int to, const ChartPoint& p);

// Same map on tangent vectors: (dx, dy) |-> (-dx - (2/h(y)) dy, dy).
TangentVector transition(const SurfaceSpec& spec, int from, int to, const TangentVector& v);

// Metric coefficients (h(y), 1, f(y)) at p, with f stitched from the
// chart-appropriate profile.
MetricCoeffs metric_at(const SurfaceSpec& spec, const ChartPoint& p);

// g(K,K) = h(y) for the Killing field K = d/dx.
double alpha(const SurfaceSpec& spec, const ChartPoint& p);

// Gauss curvature at p (de Sitter normalizes to +1), from the closed-form
// curvature of h(y)dx^2 + 2dxdy + f(y)dy^2:
//   K = (2h'' - 2fh h'' + f h'^2 + h f' h') / (4 (fh-1)^2).
double curvature_at(const SurfaceSpec& spec, const ChartPoint& p);

// The two null directions at a parabolic point, normalized to dy = 1:
// (kappa(y)/y^2, 1) and (-(2+kappa(y))/y^2, 1).  Throws std::domain_error on
// the lightlike Killing orbit y = 0 where this normalization degenerates.
std::pair<TangentVector, TangentVector> lightlike_directions(const SurfaceSpec& spec,
                                                             const ChartPoint& p);

// Hole-filling chart for hyperbolic surfaces: the metric
//   v^2 (1+F) du^2 + 2 (1 + uvF) du dv + u^2 F dv^2,
// F(u,v) = f(uv-1) built from chart 0's profile on u>0 and chart 2's on u<0
// (their Taylor data agree at the seam for valid specs).  Defined on all of
// R^2 including the Killing zero at the origin.
std::array<std::array<double, 2>, 2> filled_metric_at(const SurfaceSpec& spec,
                                                      double u, double v);

// The fixed-point-free isometric involution of the Moebius-band quotients:
// parabolic k=3 sends chart m to m+3 (mod 6), hyperbolic k=2 sends even m to
// m+5 and odd m to m+3 (mod 8), both with (x,y) |-> (-x,-y).
ChartPoint mobius_involution(const SurfaceSpec& spec, const ChartPoint& p);

//----------------------------------------------------------------------------

// A point of the de Sitter hyperboloid -x^2 + y^2 + z^2 = 1.
struct AmbientPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

enum class BlaschkeRegion { kV1, kV2, kOutside };

// Region V1: y^2 + z^2 <= 2 (equivalently |x| <= 1).  Region V2:
// 16 <= (x+z)^2 <= 25.  Disjoint: on V1, (x+z)^2 <= 9.
BlaschkeRegion blaschke_region(const AmbientPoint& p);

// The blended metric as a 3x3 coefficient matrix (restrict to the tangent
// plane of the hyperboloid):
//   M = diag(-1,1,1) + f1(x) dx (x) dx + f2(w) dw (x) dw,  w = x + z,
// with f1 = (1-(kappa1+1)^2)/(x^2+1) and f2 = (1-(kappa2+1)^2)/w^2.  The
// deformations vanish outside V1 / V2 through the profile supports.
std::array<std::array<double, 3>, 3> blaschke_metric_ambient(const BlaschkeSpec& spec,
                                                             const AmbientPoint& p);

}  // namespace zoll

#endif  // ZOLL_ATLAS_HPP_
