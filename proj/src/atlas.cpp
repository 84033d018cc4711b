// zollgeo: chart atlas implementation.

// C++ headers
#include <cmath>      // abs, log
#include <sstream>    // ostringstream
#include <stdexcept>  // domain_error, invalid_argument

// zollgeo headers
#include "zoll/atlas.hpp"

namespace zoll {

namespace {

// Slot of the adjacent pair {from,to} in each family's gluing pattern.  The
// three hyperbolic pair types, over charts Z/(4k)Z:
//   strip pairs   {2i, 2i+1}        glued on |y| < 1,
//   upper pairs   {2i+1, 2i+2}      glued on y > 1   (wrap {4k-1, 0}: -tau),
//   lower pairs   {2i, 2i+3}        glued on y < -1  (wrap {4k-2, 1}: +tau).
// Parabolic, over Z/(2k)Z: pairs {j, j+1}, glued on y > 0 for even j and on
// y < 0 for odd j (wrap {2k-1, 0}: +tau).
bool is_pair(int a, int b, int x, int y) {
  return (a == x && b == y) || (a == y && b == x);
}

[[noreturn]] void bad_pair(const char* family, int from, int to) {
  std::ostringstream msg;
  msg << family << " charts " << from << " and " << to
      << " are not glued along the requested strip";
  throw std::invalid_argument(msg.str());
}

[[noreturn]] void bad_height(int from, int to, double y) {
  std::ostringstream msg;
  msg << "y = " << y << " is outside the gluing strip of charts " << from
      << " and " << to;
  throw std::domain_error(msg.str());
}

void require_chart(const SurfaceSpec& spec, int chart) {
  if (chart < 0 || chart >= spec.chart_count()) {
    std::ostringstream msg;
    msg << "chart index " << chart << " out of range for an atlas of "
        << spec.chart_count();
    throw std::invalid_argument(msg.str());
  }
}

// Offset -x + phi(y) + tau_term of the transition map; phi' = -2/h in every
// family, which is what makes the maps isometries.
double transition_offset(const SurfaceSpec& spec, int from, int to, double y) {
  require_chart(spec, from);
  require_chart(spec, to);
  if (spec.family == Family::kElliptic) {
    throw std::invalid_argument("the elliptic atlas has a single chart");
  }
  if (from == to) bad_pair("identical", from, to);

  if (spec.family == Family::kParabolic) {
    const int n = 2 * spec.k;
    bool upper = false, lower = false, wrap_lower = false;
    for (int j = 0; j < n; ++j) {
      if (!is_pair(from, to, j, (j + 1) % n)) continue;
      if (j % 2 == 0) upper = true;
      else {
        lower = true;
        if (j == n - 1) wrap_lower = true;
      }
    }
    if (!upper && !lower) bad_pair("parabolic", from, to);
    if (y > 0.0 ? !upper : (y < 0.0 ? !lower : true)) bad_height(from, to, y);
    const double tau_term = (y < 0.0 && wrap_lower) ? spec.tau : 0.0;
    return 2.0 / y + tau_term;
  }

  const int n = 4 * spec.k;
  bool strip = false, upper = false, lower = false;
  for (int i = 0; i < 2 * spec.k; ++i) {
    if (is_pair(from, to, 2 * i, 2 * i + 1)) strip = true;
    if (is_pair(from, to, 2 * i + 1, (2 * i + 2) % n)) upper = true;
    if (is_pair(from, to, 2 * i, (2 * i + 3) % n)) lower = true;
  }
  if (!strip && !upper && !lower) bad_pair("hyperbolic", from, to);
  double tau_term = 0.0;
  if (y > 1.0) {
    if (!upper) bad_height(from, to, y);
    if (is_pair(from, to, n - 1, 0)) tau_term = -spec.tau;
  } else if (y < -1.0) {
    if (!lower) bad_height(from, to, y);
    if (is_pair(from, to, n - 2, 1)) tau_term = spec.tau;
  } else if (y > -1.0 && y < 1.0) {
    if (!strip) bad_height(from, to, y);
  } else {
    bad_height(from, to, y);
  }
  return std::log(std::abs((y + 1.0) / (y - 1.0))) + tau_term;
}

double h_of(Family family, double y) {
  switch (family) {
    case Family::kParabolic: return y * y;
    case Family::kElliptic: return y * y + 1.0;
    case Family::kHyperbolic: return y * y - 1.0;
  }
  return 0.0;
}

}  // namespace

//----------------------------------------------------------------------------

int profile_index(const SurfaceSpec& spec, int chart, double y) {
  require_chart(spec, chart);
  switch (spec.family) {
    case Family::kElliptic:
      return 0;
    case Family::kParabolic:
      // Chart 2j meets chart 2j+1 on y>0 and chart 2j-1 on y<0; the shared
      // strips force the same profile on both sides of each gluing.
      if (y >= 0.0) return chart / 2;
      return ((chart + 1) / 2) % spec.k;
    case Family::kHyperbolic: {
      const int j = chart / 2;
      const int n = 2 * spec.k;
      if (chart % 2 == 0) return j % n;
      if (y > 1.0) return (j + 1) % n;
      if (y < -1.0) return (j - 1 + n) % n;
      return j;
    }
  }
  return 0;
}

ChartPoint transition(const SurfaceSpec& spec, int from, int to, const ChartPoint& p) {
  const double offset = transition_offset(spec, from, to, p.y);
  return ChartPoint{to, -p.x + offset, p.y};
}

TangentVector transition(const SurfaceSpec& spec, int from, int to, const TangentVector& v) {
  TangentVector image;
  image.base = transition(spec, from, to, v.base);
  image.dx = -v.dx - 2.0 / h_of(spec.family, v.base.y) * v.dy;
  image.dy = v.dy;
  return image;
}

MetricCoeffs metric_at(const SurfaceSpec& spec, const ChartPoint& p) {
  const KappaProfile& kappa = spec.kappas[profile_index(spec, p.chart, p.y)];
  MetricCoeffs g;
  g.h = h_of(spec.family, p.y);
  g.m = 1.0;
  g.f = f_from_kappa(spec.family, kappa, spec.shift(), p.y);
  return g;
}

double alpha(const SurfaceSpec& spec, const ChartPoint& p) {
  require_chart(spec, p.chart);
  return h_of(spec.family, p.y);
}

double curvature_at(const SurfaceSpec& spec, const ChartPoint& p) {
  const KappaProfile& kappa = spec.kappas[profile_index(spec, p.chart, p.y)];
  const ValueAndDerivative f = f_from_kappa_d(spec.family, kappa, spec.shift(), p.y);
  const double h = h_of(spec.family, p.y);
  const double hp = 2.0 * p.y;
  const double hpp = 2.0;
  const double d = f.value * h - 1.0;
  const double numerator = 2.0 * hpp - 2.0 * f.value * h * hpp +
                           f.value * hp * hp + h * f.derivative * hp;
  return numerator / (4.0 * d * d);
}

std::pair<TangentVector, TangentVector> lightlike_directions(const SurfaceSpec& spec,
                                                             const ChartPoint& p) {
  if (spec.family != Family::kParabolic) {
    throw std::invalid_argument("null directions are tabulated for parabolic charts only");
  }
  if (p.y == 0.0) {
    throw std::domain_error(
        "point lies on the lightlike Killing orbit y = 0; "
        "the dy-normalized null directions degenerate there");
  }
  const KappaProfile& kappa = spec.kappas[profile_index(spec, p.chart, p.y)];
  const double ratio = ratio_over_square(kappa, p.y).value();
  TangentVector along;
  along.base = p;
  along.dx = ratio;
  along.dy = 1.0;
  TangentVector across;
  across.base = p;
  across.dx = -2.0 / (p.y * p.y) - ratio;
  across.dy = 1.0;
  return {along, across};
}

std::array<std::array<double, 2>, 2> filled_metric_at(const SurfaceSpec& spec,
                                                      double u, double v) {
  if (spec.family != Family::kHyperbolic) {
    throw std::invalid_argument("the hole-filling chart exists for hyperbolic surfaces only");
  }
  const KappaProfile& kappa = u >= 0.0 ? spec.kappas[0]
                                       : spec.kappas[profile_index(spec, 2, 0.0)];
  const double f = f_from_kappa(Family::kHyperbolic, kappa, 1.0, u * v - 1.0);
  const double cross = 1.0 + u * v * f;
  return {{{v * v * (1.0 + f), cross}, {cross, u * u * f}}};
}

ChartPoint mobius_involution(const SurfaceSpec& spec, const ChartPoint& p) {
  require_chart(spec, p.chart);
  int image = -1;
  if (spec.family == Family::kParabolic && spec.k == 3) {
    image = (p.chart + 3) % 6;
  } else if (spec.family == Family::kHyperbolic && spec.k == 2) {
    image = (p.chart % 2 == 0) ? (p.chart + 5) % 8 : (p.chart + 3) % 8;
  } else {
    throw std::invalid_argument(
        "the deck involution is defined for parabolic k=3 and hyperbolic k=2 atlases");
  }
  return ChartPoint{image, -p.x, -p.y};
}

//----------------------------------------------------------------------------

namespace {

void require_on_hyperboloid(const AmbientPoint& p) {
  const double constraint = -p.x * p.x + p.y * p.y + p.z * p.z - 1.0;
  if (std::abs(constraint) > 1e-8) {
    std::ostringstream msg;
    msg << "point is off the hyperboloid by " << constraint;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

BlaschkeRegion blaschke_region(const AmbientPoint& p) {
  require_on_hyperboloid(p);
  if (p.y * p.y + p.z * p.z <= 2.0) return BlaschkeRegion::kV1;
  const double w2 = (p.x + p.z) * (p.x + p.z);
  if (w2 >= 16.0 && w2 <= 25.0) return BlaschkeRegion::kV2;
  return BlaschkeRegion::kOutside;
}

std::array<std::array<double, 3>, 3> blaschke_metric_ambient(const BlaschkeSpec& spec,
                                                             const AmbientPoint& p) {
  require_on_hyperboloid(p);
  const double w = p.x + p.z;
  const double f1 = f_from_kappa(Family::kElliptic, spec.kappa1, 1.0, p.x);
  const double f2 = f_from_kappa(Family::kParabolic, spec.kappa2, 1.0, w);
  std::array<std::array<double, 3>, 3> m = {{{-1.0, 0.0, 0.0},
                                             {0.0, 1.0, 0.0},
                                             {0.0, 0.0, 1.0}}};
  m[0][0] += f1;
  // dw (x) dw with w = x + z touches the four (x,z) corners.
  m[0][0] += f2;
  m[0][2] += f2;
  m[2][0] += f2;
  m[2][2] += f2;
  return m;
}

}  // namespace zoll
