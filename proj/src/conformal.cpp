// zollgeo: lightlike structure and conformal diagnostics (implementation).

#include "zoll/conformal.hpp"

// C++ headers
#include <algorithm>  // max, min
#include <cmath>      // atan, exp, fabs, isfinite, sqrt
#include <limits>     // numeric_limits
#include <sstream>    // ostringstream
#include <stdexcept>  // domain_error, invalid_argument, runtime_error
#include <utility>    // move

// zollgeo headers
#include "zoll/atlas.hpp"  // profile_index, transition

namespace zoll {

namespace {

//----------------------------------------------------------------------------
// Parabolic leaf-graph helpers

void require_parabolic(const SurfaceSpec& spec, const char* where) {
  if (spec.family != Family::kParabolic) {
    std::ostringstream msg;
    msg << where << ": defined for parabolic surfaces (h = y^2) only";
    throw std::invalid_argument(msg.str());
  }
}

void require_chart(const SurfaceSpec& spec, int chart, const char* where) {
  if (chart < 0 || chart >= spec.chart_count()) {
    std::ostringstream msg;
    msg << where << ": chart " << chart << " out of range [0, "
        << spec.chart_count() << ")";
    throw std::invalid_argument(msg.str());
  }
}

// Stitched primitive of the chart: integral_0^y kappa_idx(s)/s^2 ds with the
// profile index switching at y = 0.  Both one-sided primitives vanish at 0,
// so the stitched function is continuous.
double stitched_primitive(const SurfaceSpec& spec, int chart, double y) {
  const KappaProfile& kap = spec.kappas[profile_index(spec, chart, y)];
  return kap.primitive_over_square(y);
}

// Limit of the stitched primitive toward y -> -infinity (direction < 0) or
// y -> +infinity (direction > 0).
double stitched_primitive_limit(const SurfaceSpec& spec, int chart,
                                int direction) {
  const double side = direction < 0 ? -1.0 : 1.0;
  const KappaProfile& kap = spec.kappas[profile_index(spec, chart, side)];
  if (direction < 0) return kap.limit_at_minus_infinity();
  return kap.primitive_over_square(kap.support_radius() + 1.0);
}

double graph_x(const SurfaceSpec& spec, int chart, int form, double cst,
               double y) {
  const double H = stitched_primitive(spec, chart, y);
  return form == 1 ? H + cst : 2.0 / y - H + cst;
}

double graph_asymptote(const SurfaceSpec& spec, int chart, int form,
                       double cst, int direction) {
  const double limit = stitched_primitive_limit(spec, chart, direction);
  return form == 1 ? limit + cst : -limit + cst;  // 2/y -> 0 either way
}

// Neighbor chart sharing the overlap strip on the given side of y = 0
// (parabolic gluing: even charts meet their successor above the corner and
// their predecessor below it).
int strip_partner(const SurfaceSpec& spec, int chart, bool upper) {
  const int n = spec.chart_count();
  const int next = ((chart % 2 == 0) == upper) ? chart + 1 : chart - 1;
  return ((next % n) + n) % n;
}

//----------------------------------------------------------------------------
// Monotone inversion by bracketed bisection.

double invert_increasing(const std::function<double(double)>& g,
                         double target) {
  double lo = target - 1.0;
  double hi = target + 1.0;
  int guard = 0;
  while (g(lo) > target) {
    lo -= (hi - lo);
    if (++guard > 120) {
      throw std::runtime_error(
          "monotone inversion failed to bracket the target from below");
    }
  }
  guard = 0;
  while (g(hi) < target) {
    hi += (hi - lo);
    if (++guard > 120) {
      throw std::runtime_error(
          "monotone inversion failed to bracket the target from above");
    }
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;  // interval at machine resolution
    (g(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

//----------------------------------------------------------------------------
// NullPrimitive

double NullPrimitive::value(double y) const {
  return kappa_.primitive_over_square(y);
}

double NullPrimitive::delta() const { return kappa_.limit_at_minus_infinity(); }

double NullPrimitive::delta_upper() const {
  return kappa_.primitive_over_square(kappa_.support_radius() + 1.0);
}

//----------------------------------------------------------------------------
// null_trace

NullLeaf null_trace(const SurfaceSpec& spec, const ChartPoint& p,
                    int foliation, double y_target) {
  require_parabolic(spec, "null_trace");
  require_chart(spec, p.chart, "null_trace");
  if (foliation != 1 && foliation != 2) {
    throw std::invalid_argument("null_trace: foliation must be 1 or 2");
  }

  NullLeaf leaf;

  // Through a corner point the second family degenerates to the Killing null
  // orbit y = 0; report it as a single orbit segment.
  if (p.y == 0.0 && foliation == 2) {
    NullLeafSegment orbit;
    orbit.chart = p.chart;
    orbit.form = 0;
    orbit.cst = p.x;
    orbit.y_from = 0.0;
    orbit.y_to = 0.0;
    orbit.asymptote = std::numeric_limits<double>::quiet_NaN();
    leaf.segments.push_back(orbit);
    return leaf;
  }

  int chart = p.chart;
  int form = foliation;
  double y = p.y;
  double cst = p.x - (form == 1 ? stitched_primitive(spec, chart, y)
                                : 2.0 / y - stitched_primitive(spec, chart, y));
  const int direction = y_target < y ? -1 : 1;

  while (true) {
    const bool crosses_corner =
        form == 2 && ((y > 0.0 && y_target <= 0.0) || (y < 0.0 && y_target >= 0.0));
    if (!crosses_corner) {
      NullLeafSegment seg;
      seg.chart = chart;
      seg.form = form;
      seg.cst = cst;
      seg.y_from = y;
      seg.y_to = y_target;
      seg.asymptote = graph_asymptote(spec, chart, form, cst, direction);
      leaf.segments.push_back(seg);
      return leaf;
    }
    if (y_target == 0.0) {
      throw std::domain_error(
          "null_trace: a second-family graph is asymptotic to the Killing "
          "orbit and never reaches y = 0");
    }

    // Hand the leaf to the neighbor chart before the graph blows up at the
    // corner; any height strictly between the current one and 0 lies in the
    // shared strip.
    const double y_hand = 0.5 * y;
    NullLeafSegment seg;
    seg.chart = chart;
    seg.form = form;
    seg.cst = cst;
    seg.y_from = y;
    seg.y_to = y_hand;
    seg.asymptote = graph_asymptote(spec, chart, form, cst, direction);
    leaf.segments.push_back(seg);

    const double x_hand = graph_x(spec, chart, form, cst, y_hand);
    const int next = strip_partner(spec, chart, y_hand > 0.0);
    const ChartPoint q =
        transition(spec, chart, next, ChartPoint{chart, x_hand, y_hand});
    chart = next;
    form = 1;  // -x + 2/y turns the blowing-up graph into a regular one
    y = q.y;
    cst = q.x - stitched_primitive(spec, chart, q.y);
  }
}

double leaf_asymptote(const SurfaceSpec& spec, const ChartPoint& p,
                      int foliation) {
  const double below = -(spec.support_radius() + 2.0);
  const double y_target = p.y <= below ? p.y - 1.0 : below;
  const NullLeaf leaf = null_trace(spec, p, foliation, y_target);
  return leaf.segments.back().asymptote;
}

double leaf_x(const SurfaceSpec& spec, const NullLeafSegment& segment,
              double y) {
  require_parabolic(spec, "leaf evaluation");
  require_chart(spec, segment.chart, "leaf evaluation");
  if (segment.form == 0) {
    throw std::domain_error("leaf evaluation: the Killing orbit is y = 0");
  }
  if (segment.form == 2 && y == 0.0) {
    throw std::domain_error("leaf evaluation: second-family graph at y = 0");
  }
  return graph_x(spec, segment.chart, segment.form, segment.cst, y);
}

//----------------------------------------------------------------------------
// ReflexionMap

namespace {

// Profile of the chart on the given side of the corner, validating the
// family first (member initializers run before the constructor body).
const KappaProfile& corner_profile(const SurfaceSpec& spec, int chart,
                                   double side) {
  require_parabolic(spec, "reflexion map");
  return spec.kappas[profile_index(spec, chart, side)];
}

}  // namespace

ReflexionMap::ReflexionMap(const SurfaceSpec& spec)
    : h0_(corner_profile(spec, 0, 1.0)), h1_(corner_profile(spec, 1, -1.0)) {
  delta0_ = h0_.delta();
  delta1_ = h1_.delta();
}

double ReflexionMap::operator()(double y) const {
  if (y == 0.0) {
    throw std::invalid_argument("reflexion map: y = 0 is the corner itself");
  }

  if (y > 0.0) {
    // Solve F(z) = -delta1 + h1(z) - 2/z = 2/y + delta1 - h0(y) for z < 0.
    // F increases from 0 (z -> -infinity) to +infinity (z -> 0^-):
    // F' = (2 + kappa1(z)) / z^2 > 0 for admissible profiles.
    const double target = 2.0 / y + delta1_ - h0_.value(y);
    if (!(target > 0.0)) {
      std::ostringstream msg;
      msg << "reflexion map: no image for y = " << y
          << " (leaf asymptote outside the reflected range)";
      throw std::runtime_error(msg.str());
    }
    auto F = [this](double z) { return -delta1_ + h1_.value(z) - 2.0 / z; };
    auto Fp = [this](double z) {
      return (2.0 + h1_.kappa().value(z)) / (z * z);
    };

    const double radius = h1_.kappa().support_radius();
    double lo = std::min(-2.0 / target - 1.0, -radius - 1.0);
    int guard = 0;
    while (F(lo) >= target) {
      lo *= 2.0;
      if (++guard > 200) {
        throw std::runtime_error("reflexion map: lower bracket not found");
      }
    }
    double hi = 0.5 * lo;
    guard = 0;
    while (F(hi) <= target) {
      hi *= 0.5;
      if (++guard > 400) {
        throw std::runtime_error("reflexion map: upper bracket not found");
      }
    }

    double z = 0.5 * (lo + hi);
    for (int it = 0; it < 60; ++it) {
      const double val = F(z) - target;
      if (val == 0.0) break;
      (val < 0.0 ? lo : hi) = z;
      double z_next = z - val / Fp(z);
      if (!std::isfinite(z_next) || !(z_next > lo && z_next < hi)) {
        z_next = 0.5 * (lo + hi);
      }
      if (std::fabs(z_next - z) <= 1e-16 * std::max(1.0, std::fabs(z))) {
        z = z_next;
        break;
      }
      z = z_next;
    }
    return z;
  }

  // y < 0: solve G(z) = delta0 + 2/z - h0(z) = -2/y - delta0 + h0(y) for
  // z > 0.  G decreases from +infinity (z -> 0^+) to delta0 - h0(+infinity).
  const double target = -2.0 / y - delta0_ + h0_.value(y);
  const double g_floor = delta0_ - h0_.delta_upper();
  if (!(target > g_floor)) {
    std::ostringstream msg;
    msg << "reflexion map: no image for y = " << y
        << " (leaf asymptote outside the reflected range)";
    throw std::runtime_error(msg.str());
  }
  auto G = [this](double z) { return delta0_ + 2.0 / z - h0_.value(z); };
  auto Gp = [this](double z) {
    return -(2.0 + h0_.kappa().value(z)) / (z * z);
  };

  const double radius = h0_.kappa().support_radius();
  double hi = std::max(2.0 / (target - g_floor) + 1.0, radius + 1.0);
  int guard = 0;
  while (G(hi) >= target) {
    hi *= 2.0;
    if (++guard > 200) {
      throw std::runtime_error("reflexion map: upper bracket not found");
    }
  }
  double lo = 0.5 * hi;
  guard = 0;
  while (G(lo) <= target) {
    lo *= 0.5;
    if (++guard > 400) {
      throw std::runtime_error("reflexion map: lower bracket not found");
    }
  }

  double z = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    const double val = G(z) - target;
    if (val == 0.0) break;
    (val > 0.0 ? lo : hi) = z;  // G decreasing
    double z_next = z - val / Gp(z);
    if (!std::isfinite(z_next) || !(z_next > lo && z_next < hi)) {
      z_next = 0.5 * (lo + hi);
    }
    if (std::fabs(z_next - z) <= 1e-16 * std::max(1.0, std::fabs(z))) {
      z = z_next;
      break;
    }
    z = z_next;
  }
  return z;
}

double reflexion_P(const SurfaceSpec& spec, double y) {
  return ReflexionMap(spec)(y);
}

//----------------------------------------------------------------------------
// regularity_probe

RegularityReport regularity_probe(const ReflexionMap& pbar) {
  // Extrapolated one-sided stencils on the abscissas {h, 2h, 3h, 4h},
  // h = 2.5e-3, anchored at the corner value P(0) = 0.
  const double h = 2.5e-3;
  auto P = [&pbar](double s) { return pbar(s); };

  const double d1_plus =
      (48.0 * P(h) - 36.0 * P(2 * h) + 16.0 * P(3 * h) - 3.0 * P(4 * h)) /
      (12.0 * h);
  const double d1_minus =
      -(48.0 * P(-h) - 36.0 * P(-2 * h) + 16.0 * P(-3 * h) - 3.0 * P(-4 * h)) /
      (12.0 * h);
  const double d2_plus = (-5.0 * P(h) + 4.0 * P(2 * h) - P(3 * h)) / (h * h);
  const double d2_minus =
      (-5.0 * P(-h) + 4.0 * P(-2 * h) - P(-3 * h)) / (h * h);

  RegularityReport report;
  report.c1_match = std::fabs(d1_plus - d1_minus);
  report.second_derivative_jump = std::fabs(d2_plus - d2_minus);
  report.predicted_jump = 2.0 * std::fabs(pbar.delta1() - pbar.delta0());
  return report;
}

//----------------------------------------------------------------------------
// BoundaryGraph

BoundaryGraph::BoundaryGraph(std::function<double(double)> theta_plus,
                             std::function<double(double)> theta_minus)
    : plus_(std::move(theta_plus)), minus_(std::move(theta_minus)) {
  if (!plus_ || !minus_) {
    throw std::invalid_argument("boundary graph: both maps must be callable");
  }
}

double BoundaryGraph::theta_minus_inverse(double target) const {
  return invert_increasing(minus_, target);
}

double BoundaryGraph::advance(double x) const {
  return theta_minus_inverse(plus_(x));
}

BoundaryGraph BoundaryGraph::desitter(int k) {
  if (k < 1) throw std::invalid_argument("boundary graph: k must be >= 1");
  const double offset = kPi / (k * std::sqrt(2.0));
  return BoundaryGraph([offset](double s) { return s + offset; },
                       [offset](double s) { return s - offset; });
}

//----------------------------------------------------------------------------
// ppp_check / normalize_boundary

namespace {

constexpr int kBoundaryGrid = 1024;

void require_monotone_boundary(const BoundaryGraph& b) {
  const double period = std::sqrt(2.0) * kPi;
  const int n = 64;
  double prev_plus = b.theta_plus(0.0);
  double prev_minus = b.theta_minus(0.0);
  for (int i = 1; i <= n; ++i) {
    const double x = period * static_cast<double>(i) / n;
    const double cur_plus = b.theta_plus(x);
    const double cur_minus = b.theta_minus(x);
    if (!(cur_plus > prev_plus) || !(cur_minus > prev_minus)) {
      throw std::invalid_argument(
          "boundary graph: theta maps must be strictly increasing");
    }
    prev_plus = cur_plus;
    prev_minus = cur_minus;
  }
}

}  // namespace

double ppp_check(const BoundaryGraph& b, int k) {
  if (k < 1) throw std::invalid_argument("ppp_check: k must be >= 1");
  require_monotone_boundary(b);
  const double period = std::sqrt(2.0) * kPi;
  double worst = 0.0;
  for (int i = 0; i < kBoundaryGrid; ++i) {
    const double x = period * static_cast<double>(i) / kBoundaryGrid;
    double z = x;
    for (int j = 0; j < k; ++j) z = b.advance(z);
    worst = std::max(worst, std::fabs(z - x - period));
  }
  return worst;
}

NormalizedBoundary normalize_boundary(const BoundaryGraph& b, int k) {
  const double residual = ppp_check(b, k);
  if (residual > 1e-8) {
    std::ostringstream msg;
    msg << "normalize_boundary: boundary is not " << k
        << "-ping-pong (residual " << residual << ")";
    throw std::invalid_argument(msg.str());
  }

  const double period = std::sqrt(2.0) * kPi;
  const double step = period / k;

  // psi(x) = (1/k) sum_{j<k} (T^j(x) - j * step) conjugates T to the
  // translation by step: psi(T(x)) = psi(x) + step up to the ping-pong
  // residual.
  auto psi = [b, k, step](double x) {
    double sum = 0.0;
    double z = x;
    for (int j = 0; j < k; ++j) {
      sum += z - j * step;
      if (j + 1 < k) z = b.advance(z);
    }
    return sum / k;
  };

  auto normalized = [b, psi](double x) {
    const double pre = invert_increasing(psi, x);
    return psi(b.advance(pre));
  };

  double worst = 0.0;
  for (int i = 0; i < kBoundaryGrid; ++i) {
    const double x = period * static_cast<double>(i) / kBoundaryGrid;
    worst = std::max(worst, std::fabs(psi(b.advance(x)) - psi(x) - step));
  }

  NormalizedBoundary out;
  out.psi = psi;
  out.normalized_advance = normalized;
  out.conjugation_residual = worst;
  return out;
}

//----------------------------------------------------------------------------
// de Sitter conformal profile

double desitter_conformal_profile(double t) { return 2.0 * std::atan(std::exp(t)); }

double desitter_conformal_height() { return kPi; }

}  // namespace zoll
