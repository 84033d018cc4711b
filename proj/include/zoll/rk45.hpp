// zollgeo: adaptive Dormand-Prince 5(4) integration for small ODE systems.
//
// The geodesic flows in this project are low-dimensional (four phase-space
// components in a chart, six on the ambient hyperboloid) and smooth between
// well-separated events (tangencies, strip exits, support boundaries), so a
// classical embedded Runge-Kutta pair with proportional step control is the
// right tool.  The driver reports every accepted step to a caller-supplied
// observer, which may stop the run or replace the state mid-flight -- that is
// how chart switches are spliced into a trajectory.  Events are located by
// bisecting the step fraction, probing each candidate time with one fixed
// fifth-order step taken from the saved step-start state, so the located
// event inherits the accuracy of the accepted step rather than of any
// interpolant.

#pragma once

#include <array>       // std::array
#include <cmath>       // std::abs, std::isfinite, std::pow
#include <functional>  // std::function
#include <sstream>     // std::ostringstream
#include <stdexcept>   // std::runtime_error

namespace zoll {

template <int N>
using OdeState = std::array<double, N>;

// Step-size policy for the adaptive driver.  The defaults are tight because
// closure gaps down at 1e-8 must be attributable to geometry, not to the
// integrator.
struct StepControl {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  double h_init = 1e-3;
  double h_min = 1e-13;
  double h_max = 0.25;
  long long max_steps = 4000000;
};

// What the on-step observer tells the driver to do next.
enum class StepVerdict { kContinue, kStop };

//----------------------------------------------------------------------------

// One fixed step of the Dormand-Prince 5(4) pair: advances y by h using the
// fifth-order weights and writes the difference against the embedded
// fourth-order solution into err.
template <int N, class F>
void rk45_step(const F& f, double t, const OdeState<N>& y, double h,
               OdeState<N>& y5, OdeState<N>& err) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695,
                          e4 = 393.0 / 640, e5 = -92097.0 / 339200,
                          e6 = 187.0 / 2100, e7 = 1.0 / 40;

  OdeState<N> k1, k2, k3, k4, k5, k6, k7, work;
  f(t, y, k1);
  for (int i = 0; i < N; ++i) work[i] = y[i] + h * a21 * k1[i];
  f(t + h / 5.0, work, k2);
  for (int i = 0; i < N; ++i) work[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  f(t + 3.0 * h / 10.0, work, k3);
  for (int i = 0; i < N; ++i)
    work[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  f(t + 4.0 * h / 5.0, work, k4);
  for (int i = 0; i < N; ++i)
    work[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  f(t + 8.0 * h / 9.0, work, k5);
  for (int i = 0; i < N; ++i)
    work[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                          a64 * k4[i] + a65 * k5[i]);
  f(t + h, work, k6);
  for (int i = 0; i < N; ++i)
    y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                        b6 * k6[i]);
  f(t + h, y5, k7);
  for (int i = 0; i < N; ++i) {
    const double y4 = y[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                  e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    err[i] = y5[i] - y4;
  }
}

//----------------------------------------------------------------------------

// Adaptive driver.  Calls on_step(t_prev, y_prev, t, y, h_used) after every
// accepted step; the observer may overwrite t and y (for example to splice in
// a chart transition at a located event) before the run continues, or return
// StepVerdict::kStop to end it.  Returns the time reached.
template <int N, class F, class OnStep>
double rk45_integrate(const F& f, double t0, OdeState<N>& y, double t_end,
                      const StepControl& ctl, const OnStep& on_step) {
  double t = t0;
  double h = ctl.h_init;
  OdeState<N> y5, err;
  for (long long step = 0; step < ctl.max_steps; ++step) {
    if (t >= t_end) return t;
    h = std::min(h, t_end - t);
    h = std::min(std::max(h, ctl.h_min), ctl.h_max);

    rk45_step<N>(f, t, y, h, y5, err);
    double norm = 0.0;
    for (int i = 0; i < N; ++i) {
      const double scale =
          ctl.abs_tol +
          ctl.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      norm = std::max(norm, std::abs(err[i]) / scale);
    }
    if (!std::isfinite(norm)) {
      std::ostringstream msg;
      msg << "rk45_integrate: non-finite state at t = " << t;
      throw std::runtime_error(msg.str());
    }

    if (norm <= 1.0) {
      const OdeState<N> y_prev = y;
      const double t_prev = t;
      const double h_used = h;
      t += h;
      y = y5;
      const double factor =
          norm > 0.0 ? 0.9 * std::pow(norm, -0.2) : 5.0;
      h *= std::min(std::max(factor, 0.2), 5.0);
      if (on_step(t_prev, y_prev, t, y, h_used) == StepVerdict::kStop) {
        return t;
      }
    } else {
      if (h <= ctl.h_min) {
        std::ostringstream msg;
        msg << "rk45_integrate: step size underflow at t = " << t;
        throw std::runtime_error(msg.str());
      }
      const double factor = 0.9 * std::pow(norm, -0.2);
      h *= std::min(std::max(factor, 0.2), 5.0);
    }
  }
  std::ostringstream msg;
  msg << "rk45_integrate: exceeded " << ctl.max_steps << " steps at t = " << t;
  throw std::runtime_error(msg.str());
}

//----------------------------------------------------------------------------

// Locates a sign change of sigma inside an accepted step [t0, t0 + h] by
// bisection on the step fraction.  Each probe re-integrates from the saved
// step-start state with a single fixed fifth-order step, so the result does
// not depend on any dense-output interpolant.  Expects sigma(y0) and sigma at
// the full step to bracket a root; writes the event state to y_event and
// returns the located fraction of h.
template <int N, class F, class Sigma>
double rk45_locate_event(const F& f, double t0, const OdeState<N>& y0, double h,
                         const Sigma& sigma, OdeState<N>& y_event) {
  OdeState<N> err;
  const double s_lo = sigma(y0);
  double lo = 0.0, hi = 1.0;
  OdeState<N> probe;
  rk45_step<N>(f, t0, y0, h, probe, err);
  const double s_hi = sigma(probe);
  if (s_lo == 0.0) {
    y_event = y0;
    return 0.0;
  }
  if (s_lo * s_hi > 0.0) {
    throw std::runtime_error(
        "rk45_locate_event: step does not bracket a sign change");
  }
  y_event = probe;
  for (int iter = 0; iter < 80; ++iter) {
    const double mid = 0.5 * (lo + hi);
    rk45_step<N>(f, t0, y0, mid * h, probe, err);
    const double s_mid = sigma(probe);
    if (s_mid == 0.0 || (hi - lo) < 1e-15) {
      y_event = probe;
      return mid;
    }
    if (s_lo * s_mid < 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
    y_event = probe;
  }
  const double alpha = 0.5 * (lo + hi);
  rk45_step<N>(f, t0, y0, alpha * h, y_event, err);
  return alpha;
}

}  // namespace zoll
