// zollgeo: geodesic engines — closed-form band shooting stitched through the
// atlas, direct ODE integration with tangency hand-offs, the transverse
// probe through the hole-filling chart, and the constrained ambient flow of
// the blended hyperboloid metric.

// C++ headers
#include <algorithm>   // max, min
#include <cmath>       // abs, atan, log, sqrt
#include <functional>  // function
#include <limits>      // numeric_limits
#include <sstream>     // ostringstream
#include <stdexcept>   // invalid_argument, logic_error, runtime_error

// zollgeo headers
#include "zoll/geodesics.hpp"
#include "zoll/profile.hpp"  // f_from_kappa_d, ratio_over_square...
#include "zoll/quad.hpp"     // closure_residual_elliptic, weighted_band_integral
#include "zoll/rk45.hpp"     // rk45_integrate, rk45_locate_event

namespace zoll {

namespace {

//----------------------------------------------------------------------------
// Family bookkeeping shared by the shooting and ODE paths.

double h_of(Family family, double y) {
  switch (family) {
    case Family::kParabolic: return y * y;
    case Family::kElliptic: return y * y + 1.0;
    case Family::kHyperbolic: return y * y - 1.0;
  }
  return 0.0;
}

// Minimum admissible tangency height: hyperbolic band geodesics graze the
// tangency lines outside the Killing-degenerate strip |y| <= 1.
double band_floor(Family family) {
  return family == Family::kHyperbolic ? 1.0 : 0.0;
}

void require_band_height(const SurfaceSpec& spec, double c, const char* who) {
  if (!(c > band_floor(spec.family))) {
    std::ostringstream msg;
    msg << who << ": tangency height c = " << c << " must exceed "
        << band_floor(spec.family);
    throw std::invalid_argument(msg.str());
  }
}

void require_chart(const SurfaceSpec& spec, int chart, const char* who) {
  if (chart < 0 || chart >= spec.chart_count()) {
    std::ostringstream msg;
    msg << who << ": chart " << chart << " out of range [0, "
        << spec.chart_count() << ")";
    throw std::invalid_argument(msg.str());
  }
}

// Value of the conserved Clairaut pairing carried by a rising sweep at
// tangency height c.
double clairaut_of(Family family, double c) {
  switch (family) {
    case Family::kParabolic: return c;
    case Family::kElliptic: return std::sqrt(c * c + 1.0);
    case Family::kHyperbolic: return std::sqrt(c * c - 1.0);
  }
  return 0.0;
}

// Chart receiving the geodesic after a tangency.  Top tangencies hand even
// charts up and odd charts down (parabolic) or to the strip partner
// (hyperbolic); bottom tangencies do the reverse.  The resulting sweep is
// the one whose coordinate expression stays regular across the band.
int next_chart_at_tangency(const SurfaceSpec& spec, int chart, bool top) {
  const int n = spec.chart_count();
  const bool even = chart % 2 == 0;
  int next = chart;
  switch (spec.family) {
    case Family::kParabolic:
      if (top) {
        next = even ? chart + 1 : chart - 1;
      } else {
        next = even ? chart - 1 : chart + 1;
      }
      break;
    case Family::kElliptic:
      return chart;  // single chart, no hand-off
    case Family::kHyperbolic:
      if (top) {
        next = even ? chart - 1 : chart + 1;
      } else {
        next = even ? chart + 3 : chart - 3;
      }
      break;
  }
  return ((next % n) + n) % n;
}

// Stitched profile value at height y as seen from `chart`.
const KappaProfile& kappa_at(const SurfaceSpec& spec, int chart, double y) {
  return spec.kappas[static_cast<std::size_t>(profile_index(spec, chart, y))];
}

//----------------------------------------------------------------------------
// Closed-form sweep quantities.

// Signed x-displacement of a rising sweep carried by `chart`.  The
// profile-free part integrates in closed form (2/c for parabolic,
// log((c+1)/(c-1)) for hyperbolic); the deformation contributes a weighted
// band integral of the stitched profile ratio.
double rising_shift(const SurfaceSpec& spec, int chart, double c, int nodes) {
  const double radius = spec.support_radius();
  switch (spec.family) {
    case Family::kParabolic: {
      auto phi = [&spec, chart](double y) {
        return ratio_over_square(kappa_at(spec, chart, y), y).value();
      };
      return 2.0 / c + c * weighted_band_integral(phi, c, radius, nodes);
    }
    case Family::kHyperbolic: {
      const double m = std::sqrt(c * c - 1.0);
      auto phi = [&spec, chart](double y) {
        return ratio_over_square_minus_one(kappa_at(spec, chart, y), y).value();
      };
      return std::log((c + 1.0) / (c - 1.0)) +
             m * weighted_band_integral(phi, c, radius, nodes);
    }
    case Family::kElliptic:
      break;  // handled by the caller: the shift splits by sweep direction
  }
  throw std::logic_error("rising_shift: elliptic sweeps are handled inline");
}

// Arc length of one band sweep carried by `chart` (independent of the sweep
// direction): pi — r pi for elliptic — plus the weighted band integral of
// the stitched profile.
double sweep_length(const SurfaceSpec& spec, int chart, double c, int nodes) {
  const double radius = spec.support_radius();
  auto phi = [&spec, chart](double y) {
    return kappa_at(spec, chart, y).value(y);
  };
  const double base = spec.family == Family::kElliptic ? spec.shift() * kPi : kPi;
  return base + weighted_band_integral(phi, c, radius, nodes);
}

//----------------------------------------------------------------------------
// Chart ODE right-hand side.  With D = h f - 1 the geodesic equations of
// h dx^2 + 2 dx dy + f dy^2 read
//   x'' = -(h' x'^2 + 2 f h' x' y' - f' y'^2) / (2D)
//   y'' = +(h h' x'^2 + 2 h' x' y' - h f' y'^2) / (2D),
// which conserve both the unit norm and the Clairaut pairing h x' + y'.

struct ChartCoeffs {
  double h = 0.0, hp = 0.0, f = 0.0, fp = 0.0;
};

ChartCoeffs chart_coeffs(const SurfaceSpec& spec, int chart, double y) {
  ChartCoeffs co;
  co.h = h_of(spec.family, y);
  co.hp = 2.0 * y;
  const ValueAndDerivative fd =
      f_from_kappa_d(spec.family, kappa_at(spec, chart, y), spec.shift(), y);
  co.f = fd.value;
  co.fp = fd.derivative;
  return co;
}

void chart_rhs(const SurfaceSpec& spec, int chart, const OdeState<4>& s,
               OdeState<4>& ds) {
  const double xd = s[2];
  const double yd = s[3];
  const ChartCoeffs co = chart_coeffs(spec, chart, s[1]);
  const double d2 = 2.0 * (co.h * co.f - 1.0);
  ds[0] = xd;
  ds[1] = yd;
  ds[2] = -(co.hp * xd * xd + 2.0 * co.f * co.hp * xd * yd - co.fp * yd * yd) / d2;
  ds[3] = (co.h * co.hp * xd * xd + 2.0 * co.hp * xd * yd -
           co.h * co.fp * yd * yd) / d2;
}

double chart_norm(const ChartCoeffs& co, double xd, double yd) {
  return co.h * xd * xd + 2.0 * xd * yd + co.f * yd * yd;
}

//----------------------------------------------------------------------------
// Generic 2x2 Christoffel symbols, used by the hole-filling chart where all
// six metric derivatives are nonzero.

void christoffels_2x2(const double g[2][2], const double dg[2][2][2],
                      double gamma[2][2][2]) {
  const double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  const double ginv[2][2] = {{g[1][1] / det, -g[0][1] / det},
                             {-g[1][0] / det, g[0][0] / det}};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        double sum = 0.0;
        for (int d = 0; d < 2; ++d) {
          sum += ginv[a][d] * (dg[b][c][d] + dg[c][b][d] - dg[d][b][c]);
        }
        gamma[a][b][c] = 0.5 * sum;
      }
    }
  }
}

}  // namespace

//----------------------------------------------------------------------------

double arc_length(const SurfaceSpec& spec, int chart, double c, int nodes) {
  require_chart(spec, chart, "arc_length");
  require_band_height(spec, c, "arc_length");
  return sweep_length(spec, chart, c, nodes);
}

ClosureReport shoot(const SurfaceSpec& spec, double c, int start_chart,
                    int nodes, double tol) {
  require_chart(spec, start_chart, "shoot");
  require_band_height(spec, c, "shoot");
  if (spec.family == Family::kHyperbolic && start_chart % 2 != 0) {
    throw std::invalid_argument(
        "shoot: hyperbolic loops must start from an even chart");
  }

  ClosureReport report;
  const int arcs = spec.family == Family::kElliptic ? 2 : spec.chart_count() /
                       (spec.family == Family::kHyperbolic ? 2 : 1);
  ChartPoint p{start_chart, 0.0, -c};

  for (int i = 0; i < arcs; ++i) {
    const bool rising = i % 2 == 0;
    GeodesicArc arc;
    arc.chart = p.chart;
    arc.c = c;
    arc.eps = rising ? -1 : 1;
    arc.eps1 = rising ? 1 : -1;
    arc.y_from = rising ? -c : c;
    arc.y_to = rising ? c : -c;
    arc.length = sweep_length(spec, p.chart, c, nodes);

    if (spec.family == Family::kElliptic) {
      const double res = closure_residual_elliptic(spec, c, nodes);
      const double turn = 2.0 * std::atan(c);
      arc.x_shift = spec.shift() * kPi + res + (rising ? -turn : turn);
    } else {
      const double shift = rising_shift(spec, p.chart, c, nodes);
      arc.x_shift = rising ? shift : -shift;
    }

    p.x += arc.x_shift;
    p.y = arc.y_to;
    report.arcs.push_back(arc);
    report.total_length += arc.length;

    const int next = next_chart_at_tangency(spec, p.chart, /*top=*/rising);
    if (next != p.chart) {
      p = transition(spec, p.chart, next, p);
    }
  }

  if (p.chart != start_chart) {
    throw std::logic_error("shoot: loop did not return to the start chart");
  }
  const double target =
      spec.family == Family::kElliptic
          ? spec.tau * static_cast<double>(spec.p) / static_cast<double>(spec.q)
          : 0.0;
  report.terminal_gap = std::abs(p.x - target);
  report.closed = report.terminal_gap <= tol;
  return report;
}

//----------------------------------------------------------------------------

OdeResult ode_integrate(const SurfaceSpec& spec, const TangentVector& start,
                        double t_max, const OdeOptions& opts) {
  require_chart(spec, start.base.chart, "ode_integrate");

  int chart = start.base.chart;
  OdeState<4> s{start.base.x, start.base.y, start.dx, start.dy};

  const ChartCoeffs co0 = chart_coeffs(spec, chart, s[1]);
  const double norm0 = chart_norm(co0, s[2], s[3]);
  if (std::abs(norm0 - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "ode_integrate: start must be unit spacelike (g(v,v) = " << norm0
        << ")";
    throw std::invalid_argument(msg.str());
  }
  const double clairaut0 = std::abs(co0.h * s[2] + s[3]);

  // Tangency height implied by the conserved pairing; used to scale the
  // re-arming threshold of the tangency detector.
  double c_param = clairaut0;
  if (spec.family == Family::kElliptic) {
    c_param = std::sqrt(std::max(clairaut0 * clairaut0 - 1.0, 0.0));
  } else if (spec.family == Family::kHyperbolic) {
    c_param = std::sqrt(clairaut0 * clairaut0 + 1.0);
  }
  const double arm_threshold = 0.05 * std::max(c_param, 1e-6);

  OdeResult result;
  result.path.push_back({0.0, ChartPoint{chart, s[0], s[1]}, s[2], s[3]});

  const int start_chart = chart;
  const double x0 = s[0];
  bool armed = std::abs(s[3]) > arm_threshold;

  auto rhs = [&spec, &chart](double, const OdeState<4>& y, OdeState<4>& dy) {
    chart_rhs(spec, chart, y, dy);
  };

  StepControl ctl;
  ctl.rel_tol = opts.rel_tol;
  ctl.abs_tol = opts.abs_tol;
  ctl.h_max = opts.h_max;
  ctl.max_steps = opts.max_steps;

  auto on_step = [&](double t_prev, const OdeState<4>& s_prev, double& t,
                     OdeState<4>& y, double h_used) -> StepVerdict {
    // Conservation monitors on the accepted state.
    const ChartCoeffs co = chart_coeffs(spec, chart, y[1]);
    const double norm = chart_norm(co, y[2], y[3]);
    const double clairaut = std::abs(co.h * y[2] + y[3]);
    result.norm_drift = std::max(result.norm_drift, std::abs(norm - 1.0));
    result.clairaut_drift =
        std::max(result.clairaut_drift, std::abs(clairaut - clairaut0));
    if (result.norm_drift > opts.drift_abort ||
        result.clairaut_drift > opts.drift_abort) {
      std::ostringstream msg;
      msg << "ode_integrate: conservation drift (norm " << result.norm_drift
          << ", clairaut " << result.clairaut_drift << ") exceeded "
          << opts.drift_abort << " at t = " << t << " in chart " << chart;
      throw std::runtime_error(msg.str());
    }

    // Tangency: dy changes sign once per sweep.  The detector re-arms only
    // after dy has regrown past the threshold, so the near-zero dy right
    // after a hand-off cannot re-fire it.
    if (armed && (s_prev[3] == 0.0 || s_prev[3] * y[3] <= 0.0)) {
      OdeState<4> at_event;
      const double alpha = rk45_locate_event<4>(
          rhs, t_prev, s_prev, h_used,
          [](const OdeState<4>& state) { return state[3]; }, at_event);
      t = t_prev + alpha * h_used;
      y = at_event;
      armed = false;
      ++result.tangencies;

      const bool top = y[1] > 0.0;
      const int next = next_chart_at_tangency(spec, chart, top);
      if (next != chart) {
        TangentVector v{ChartPoint{chart, y[0], y[1]}, y[2], y[3]};
        const TangentVector mapped = transition(spec, chart, next, v);
        chart = next;
        y = {mapped.base.x, mapped.base.y, mapped.dx, mapped.dy};
      }
      result.path.push_back({t, ChartPoint{chart, y[0], y[1]}, y[2], y[3]});

      if (opts.tangency_target > 0 &&
          result.tangencies >= opts.tangency_target) {
        result.completed_loop = chart == start_chart;
        if (result.completed_loop) {
          const double target =
              spec.family == Family::kElliptic
                  ? spec.tau * static_cast<double>(spec.p) /
                        static_cast<double>(spec.q)
                  : 0.0;
          result.terminal_gap = std::abs(y[0] - x0 - target);
          result.period = t;
        }
        return StepVerdict::kStop;
      }
      return StepVerdict::kContinue;
    }

    if (!armed && std::abs(y[3]) > arm_threshold) armed = true;
    result.path.push_back({t, ChartPoint{chart, y[0], y[1]}, y[2], y[3]});
    return StepVerdict::kContinue;
  };

  rk45_integrate<4>(rhs, 0.0, s, t_max, ctl, on_step);
  return result;
}

OdeResult ode_closure(const SurfaceSpec& spec, double c, int start_chart,
                      const OdeOptions& opts) {
  require_chart(spec, start_chart, "ode_closure");
  require_band_height(spec, c, "ode_closure");
  if (spec.family == Family::kHyperbolic && start_chart % 2 != 0) {
    throw std::invalid_argument(
        "ode_closure: hyperbolic loops must start from an even chart");
  }

  const double clairaut = clairaut_of(spec.family, c);
  const double h_bottom = h_of(spec.family, -c);
  TangentVector start{ChartPoint{start_chart, 0.0, -c}, clairaut / h_bottom,
                      0.0};

  OdeOptions run = opts;
  run.tangency_target = spec.family == Family::kElliptic
                            ? 2
                            : spec.chart_count() /
                                  (spec.family == Family::kHyperbolic ? 2 : 1);
  const double sweep = spec.family == Family::kElliptic
                           ? spec.shift() * kPi
                           : kPi;
  run.h_max = std::min(opts.h_max, 0.2 * sweep);
  const double t_max = 3.0 * sweep * run.tangency_target + 5.0;
  return ode_integrate(spec, start, t_max, run);
}

//----------------------------------------------------------------------------
// Transverse probe: the Killing-orthogonal geodesic through the origin of
// the hole-filling chart.  Exact chart algebra pins its exits at uv = 1 to
// u = +sqrt(2) and u = -sqrt(2) regardless of the profiles, so the measured
// defect between the adapted exit coordinates log(u) and log(-u) + tau
// equals |tau| whenever the metric, its Christoffel symbols, and the
// integrator are consistent.

namespace {

struct FilledExit {
  double u = 0.0;
  double v = 0.0;
};

FilledExit filled_chart_exit(const SurfaceSpec& spec, double direction) {
  auto rhs = [&spec](double, const OdeState<4>& s, OdeState<4>& ds) {
    const double u = s[0];
    const double v = s[1];
    const KappaProfile& kappa =
        u >= 0.0 ? spec.kappas[0]
                 : spec.kappas[static_cast<std::size_t>(
                       profile_index(spec, 2, 0.0))];
    const ValueAndDerivative fd =
        f_from_kappa_d(Family::kHyperbolic, kappa, 1.0, u * v - 1.0);
    const double F = fd.value;
    const double Fp = fd.derivative;

    const double g[2][2] = {{v * v * (1.0 + F), 1.0 + u * v * F},
                            {1.0 + u * v * F, u * u * F}};
    const double dg[2][2][2] = {
        {{v * v * v * Fp, v * F + u * v * v * Fp},
         {v * F + u * v * v * Fp, 2.0 * u * F + u * u * v * Fp}},
        {{2.0 * v * (1.0 + F) + u * v * v * Fp, u * F + u * u * v * Fp},
         {u * F + u * u * v * Fp, u * u * u * Fp}}};
    double gamma[2][2][2];
    christoffels_2x2(g, dg, gamma);

    const double w[2] = {s[2], s[3]};
    ds[0] = w[0];
    ds[1] = w[1];
    for (int a = 0; a < 2; ++a) {
      double acc = 0.0;
      for (int b = 0; b < 2; ++b) {
        for (int c = 0; c < 2; ++c) acc += gamma[a][b][c] * w[b] * w[c];
      }
      ds[2 + a] = -acc;
    }
  };

  const double component = direction / std::sqrt(2.0);
  OdeState<4> s{0.0, 0.0, component, component};

  StepControl ctl;
  ctl.rel_tol = 1e-12;
  ctl.abs_tol = 1e-14;
  ctl.h_max = 0.05;

  FilledExit exit;
  bool found = false;
  auto on_step = [&](double t_prev, const OdeState<4>& s_prev, double& t,
                     OdeState<4>& y, double h_used) -> StepVerdict {
    if (y[0] * y[1] - 1.0 >= 0.0) {
      OdeState<4> at_event;
      const double alpha = rk45_locate_event<4>(
          rhs, t_prev, s_prev, h_used,
          [](const OdeState<4>& state) { return state[0] * state[1] - 1.0; },
          at_event);
      t = t_prev + alpha * h_used;
      y = at_event;
      exit.u = y[0];
      exit.v = y[1];
      found = true;
      return StepVerdict::kStop;
    }
    return StepVerdict::kContinue;
  };

  rk45_integrate<4>(rhs, 0.0, s, 10.0, ctl, on_step);
  if (!found) {
    throw std::runtime_error(
        "perpendicular_closure_probe: geodesic did not reach uv = 1");
  }
  return exit;
}

}  // namespace

TransverseClosure perpendicular_closure_probe(const SurfaceSpec& spec) {
  if (spec.family != Family::kHyperbolic) {
    throw std::invalid_argument(
        "perpendicular_closure_probe: requires a hyperbolic surface");
  }

  const FilledExit plus = filled_chart_exit(spec, +1.0);
  const FilledExit minus = filled_chart_exit(spec, -1.0);
  if (!(plus.u > 0.0) || !(-minus.u > 0.0)) {
    throw std::runtime_error(
        "perpendicular_closure_probe: exits landed on the wrong side");
  }

  TransverseClosure out;
  out.gap = std::abs(std::log(plus.u) - (std::log(-minus.u) + spec.tau));
  out.closed = spec.tau == 0.0;
  if (std::abs(out.gap - std::abs(spec.tau)) > 1e-5) {
    std::ostringstream msg;
    msg << "perpendicular_closure_probe: ODE defect " << out.gap
        << " disagrees with the translation parameter " << spec.tau;
    throw std::runtime_error(msg.str());
  }
  return out;
}

bool perpendicular_closure_hyperbolic(const SurfaceSpec& spec) {
  return perpendicular_closure_probe(spec).closed;
}

//----------------------------------------------------------------------------
// Constrained ambient flow of the blended metric.

namespace {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

double dot3(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Minkowski pairing with signature (-,+,+).
double eta_pair(const Vec3& a, const Vec3& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 eta_lower(const Vec3& a) { return {-a[0], a[1], a[2]}; }

Vec3 mat_vec(const Mat3& m, const Vec3& a) {
  return {dot3(m[0], a), dot3(m[1], a), dot3(m[2], a)};
}

// Solves the symmetric 3x3 system m x = b by Gaussian elimination with
// partial pivoting; m stays well conditioned on the hyperboloid.
Vec3 solve3(Mat3 m, Vec3 b) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    }
    std::swap(m[col], m[pivot]);
    std::swap(b[col], b[pivot]);
    if (m[col][col] == 0.0) {
      throw std::runtime_error("solve3: singular blended metric");
    }
    for (int row = col + 1; row < 3; ++row) {
      const double factor = m[row][col] / m[col][col];
      for (int j = col; j < 3; ++j) m[row][j] -= factor * m[col][j];
      b[row] -= factor * b[col];
    }
  }
  Vec3 x{};
  for (int row = 2; row >= 0; --row) {
    double sum = b[row];
    for (int j = row + 1; j < 3; ++j) sum -= m[row][j] * x[j];
    x[row] = sum / m[row][row];
  }
  return x;
}

// Blended metric and its two nonzero coordinate derivative matrices at q.
// Evaluated directly from the profiles so that Runge-Kutta stage points,
// which sit slightly off the hyperboloid, are acceptable inputs.
void blended_metric(const BlaschkeSpec& spec, const Vec3& q, Mat3& m,
                    Mat3& dmx, Mat3& dmz) {
  const ValueAndDerivative f1 =
      f_from_kappa_d(Family::kElliptic, spec.kappa1, 1.0, q[0]);
  const ValueAndDerivative f2 =
      f_from_kappa_d(Family::kParabolic, spec.kappa2, 1.0, q[0] + q[2]);

  m = Mat3{Vec3{-1.0 + f1.value + f2.value, 0.0, f2.value},
           Vec3{0.0, 1.0, 0.0},
           Vec3{f2.value, 0.0, 1.0 + f2.value}};
  dmx = Mat3{Vec3{f1.derivative + f2.derivative, 0.0, f2.derivative},
             Vec3{0.0, 0.0, 0.0},
             Vec3{f2.derivative, 0.0, f2.derivative}};
  dmz = Mat3{Vec3{f2.derivative, 0.0, f2.derivative},
             Vec3{0.0, 0.0, 0.0},
             Vec3{f2.derivative, 0.0, f2.derivative}};
}

// Right-hand side of the constrained geodesic equations: the Lagrange
// multiplier keeps the acceleration tangent to the hyperboloid, so the
// constraint is preserved exactly in exact arithmetic and the per-step
// re-projection only has to absorb roundoff.
void blaschke_rhs(const BlaschkeSpec& spec, const OdeState<6>& s,
                  OdeState<6>& ds) {
  const Vec3 q{s[0], s[1], s[2]};
  const Vec3 w{s[3], s[4], s[5]};
  Mat3 m, dmx, dmz;
  blended_metric(spec, q, m, dmx, dmz);

  const Vec3 dmx_w = mat_vec(dmx, w);
  const Vec3 dmz_w = mat_vec(dmz, w);
  Vec3 b{0.5 * dot3(w, dmx_w), 0.0, 0.5 * dot3(w, dmz_w)};
  for (int i = 0; i < 3; ++i) {
    b[i] -= w[0] * dmx_w[i] + w[2] * dmz_w[i];
  }

  const Vec3 etaq = eta_lower(q);
  const Vec3 mb = solve3(m, b);
  const Vec3 metaq = solve3(m, etaq);
  const double lambda =
      -(eta_pair(w, w) + dot3(etaq, mb)) / (2.0 * dot3(etaq, metaq));

  ds[0] = w[0];
  ds[1] = w[1];
  ds[2] = w[2];
  ds[3] = mb[0] + 2.0 * lambda * metaq[0];
  ds[4] = mb[1] + 2.0 * lambda * metaq[1];
  ds[5] = mb[2] + 2.0 * lambda * metaq[2];
}

// Pulls the state back onto the constraint manifold: unit hyperboloid
// position, eta-tangent velocity, unit blended-metric speed.
void blaschke_project(const BlaschkeSpec& spec, OdeState<6>& s) {
  Vec3 q{s[0], s[1], s[2]};
  Vec3 w{s[3], s[4], s[5]};
  const double qq = eta_pair(q, q);
  const double scale = 1.0 / std::sqrt(qq);
  for (int i = 0; i < 3; ++i) q[i] *= scale;
  const double wq = eta_pair(w, q);
  for (int i = 0; i < 3; ++i) w[i] -= wq * q[i];
  Mat3 m, dmx, dmz;
  blended_metric(spec, q, m, dmx, dmz);
  const double speed = std::sqrt(dot3(w, mat_vec(m, w)));
  for (int i = 0; i < 3; ++i) w[i] /= speed;
  s = {q[0], q[1], q[2], w[0], w[1], w[2]};
}

double phase_distance_sq(const OdeState<6>& a, const OdeState<6>& b) {
  double sum = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

}  // namespace

BlaschkeClosure blaschke_geodesic(const BlaschkeSpec& spec,
                                  const AmbientPoint& start,
                                  const std::array<double, 3>& dir,
                                  double t_max) {
  Vec3 q{start.x, start.y, start.z};
  const double qq = eta_pair(q, q);
  if (std::abs(qq - 1.0) > 1e-8) {
    throw std::invalid_argument(
        "blaschke_geodesic: start must lie on the hyperboloid");
  }

  OdeState<6> s{q[0], q[1], q[2], dir[0], dir[1], dir[2]};
  {
    const Vec3 w{dir[0], dir[1], dir[2]};
    Mat3 m, dmx, dmz;
    blended_metric(spec, q, m, dmx, dmz);
    const Vec3 tangent{w[0] - eta_pair(w, q) / qq * q[0],
                       w[1] - eta_pair(w, q) / qq * q[1],
                       w[2] - eta_pair(w, q) / qq * q[2]};
    const double norm_sq = dot3(tangent, mat_vec(m, tangent));
    if (!(norm_sq > 1e-12)) {
      throw std::invalid_argument(
          "blaschke_geodesic: direction must be spacelike in the blended metric");
    }
  }
  blaschke_project(spec, s);
  const OdeState<6> s0 = s;

  auto rhs = [&spec](double, const OdeState<6>& y, OdeState<6>& dy) {
    blaschke_rhs(spec, y, dy);
  };

  struct Sample {
    double t;
    OdeState<6> s;
  };
  std::vector<Sample> samples;
  samples.push_back({0.0, s});

  BlaschkeClosure out;
  auto note_region = [&out](const OdeState<6>& state) {
    const BlaschkeRegion region =
        blaschke_region(AmbientPoint{state[0], state[1], state[2]});
    if (region == BlaschkeRegion::kV1) out.visited_v1 = true;
    if (region == BlaschkeRegion::kV2) out.visited_v2 = true;
  };
  note_region(s);

  StepControl ctl;
  ctl.rel_tol = 1e-11;
  ctl.abs_tol = 1e-13;
  ctl.h_max = 0.02;
  ctl.max_steps = 4000000;

  auto on_step = [&](double, const OdeState<6>&, double& t, OdeState<6>& y,
                     double) -> StepVerdict {
    const Vec3 pos{y[0], y[1], y[2]};
    const double drift = std::abs(eta_pair(pos, pos) - 1.0);
    out.max_drift = std::max(out.max_drift, drift);
    if (drift > 1e-8) {
      std::ostringstream msg;
      msg << "blaschke_geodesic: constraint drift " << drift
          << " exceeded 1e-8 at t = " << t;
      throw std::runtime_error(msg.str());
    }
    blaschke_project(spec, y);
    note_region(y);
    samples.push_back({t, y});
    return StepVerdict::kContinue;
  };

  rk45_integrate<6>(rhs, 0.0, s, t_max, ctl, on_step);

  // Scan the window around one expected period for the closest return, then
  // refine by golden-section, re-integrating short stretches from the
  // nearest stored sample so the refinement keeps full solver accuracy.
  double window_lo = 0.9 * 2.0 * kPi;
  double window_hi = std::min(t_max, 1.1 * 2.0 * kPi);
  if (!(window_lo < window_hi)) {
    window_lo = 0.5 * t_max;
    window_hi = t_max;
  }

  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].t < window_lo || samples[i].t > window_hi) continue;
    const double d = phase_distance_sq(samples[i].s, s0);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  if (!std::isfinite(best_d)) {
    throw std::runtime_error(
        "blaschke_geodesic: scan window contains no samples; increase t_max");
  }

  const std::size_t lo_idx = best >= 2 ? best - 2 : 0;
  const std::size_t hi_idx = std::min(best + 2, samples.size() - 1);
  const Sample& anchor = samples[lo_idx];

  auto distance_at = [&](double t_eval) -> double {
    OdeState<6> y = anchor.s;
    if (t_eval > anchor.t) {
      StepControl fine = ctl;
      fine.h_init = 1e-4;
      auto no_op = [](double, const OdeState<6>&, double&, OdeState<6>&,
                      double) { return StepVerdict::kContinue; };
      rk45_integrate<6>(rhs, anchor.t, y, t_eval, fine, no_op);
    }
    return phase_distance_sq(y, s0);
  };

  double lo = anchor.t;
  double hi = samples[hi_idx].t;
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - golden * (hi - lo);
  double x2 = lo + golden * (hi - lo);
  double f1 = distance_at(x1);
  double f2 = distance_at(x2);
  for (int iter = 0; iter < 80 && (hi - lo) > 1e-13; ++iter) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - golden * (hi - lo);
      f1 = distance_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + golden * (hi - lo);
      f2 = distance_at(x2);
    }
  }
  const double t_best = 0.5 * (lo + hi);
  out.min_gap = std::sqrt(distance_at(t_best));
  out.t_at_min = t_best;
  return out;
}

}  // namespace zoll
