// zollgeo: surface descriptions and chart-level value types.

// A surface is described by its family (which fixes the chart normal form
// h(y)dx^2 + 2dxdy + f(y)dy^2 and the gluing pattern), the integer k sizing
// the atlas, the gluing translation tau, the elliptic winding pair (p,q), and
// the list of deformation profiles from which every f is built:
//   parabolic:  2k charts,  k profiles,  h = y^2
//   elliptic:   1 chart,    1 profile,   h = y^2+1,  x ~ x + tau
//   hyperbolic: 4k charts,  2k profiles, h = y^2-1

#ifndef ZOLL_SPEC_HPP_
#define ZOLL_SPEC_HPP_

// C++ headers
#include <vector>     // vector

// zollgeo headers
#include "zoll/profile.hpp"  // KappaProfile, Family

namespace zoll {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

//----------------------------------------------------------------------------

// A point in chart coordinates: chart index, Killing-flow coordinate x,
// transverse coordinate y.
struct ChartPoint {
  int chart = 0;
  double x = 0.0;
  double y = 0.0;
};

// Metric coefficients at a point: h dx^2 + 2 m dx dy + f dy^2 (m is always 1
// in the chart normal forms; kept explicit for pullback arithmetic).
struct MetricCoeffs {
  double h = 0.0;
  double m = 1.0;
  double f = 0.0;
};

struct TangentVector {
  ChartPoint base;
  double dx = 0.0;
  double dy = 0.0;
};

//----------------------------------------------------------------------------

// Full description of one surface.  Construct through the factories, which
// enforce the size relations between k and the profile list.
struct SurfaceSpec {
  Family family = Family::kParabolic;
  int k = 1;          // atlas size parameter (unused for elliptic)
  double tau = 0.0;   // gluing translation (elliptic: the cylinder period)
  int p = 1, q = 1;   // elliptic winding numbers
  std::vector<KappaProfile> kappas;

  static SurfaceSpec parabolic(int k, double tau, std::vector<KappaProfile> kappas);
  static SurfaceSpec elliptic(double tau, int p, int q, KappaProfile kappa);
  static SurfaceSpec hyperbolic(int k, double tau, std::vector<KappaProfile> kappas);

  // Number of charts: 2k (parabolic), 1 (elliptic), 4k (hyperbolic).
  int chart_count() const;

  // The shift entering f = (1 - (shift + kappa)^2)/w: 1 for parabolic and
  // hyperbolic, p*tau/(2*pi*q) for elliptic.
  double shift() const;

  // Largest profile support radius (grid scans cover [-R-1, R+1]).
  double support_radius() const;
};

// The Blaschke blend: de Sitter with an elliptic deformation (kappa1, active
// where g0(K1,K1) <= 2) and a parabolic one (kappa2, active where
// 16 <= g0(K2,K2) <= 25) glued along disjoint supports.
struct BlaschkeSpec {
  KappaProfile kappa1;  // odd, support in [-1,1]
  KappaProfile kappa2;  // odd, support in [-5,-4] u [4,5]
};

}  // namespace zoll

#endif  // ZOLL_SPEC_HPP_
