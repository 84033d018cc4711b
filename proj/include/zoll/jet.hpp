// zollgeo: truncated Taylor arithmetic (jets) for profile derivatives.

// The deformation profiles need exact derivatives up to order 6 at arbitrary
// points (curvature needs two derivatives of a ratio whose series fallback
// needs four more).  A fixed-order jet carries the Taylor coefficients
// a_k = f^(k)(t0)/k! and propagates them through +, -, *, /, and exp, which
// is all the profile formulas use (windows are built from exp, everything
// else is rational).

#ifndef ZOLL_JET_HPP_
#define ZOLL_JET_HPP_

// C++ headers
#include <array>      // array
#include <cmath>      // exp, isfinite
#include <cstddef>    // size_t

namespace zoll {

//----------------------------------------------------------------------------

// Truncated Taylor series of order N: value plus N derivatives.
// Coefficients are Taylor coefficients (derivative k divided by k!), which
// keeps products and quotients as plain Cauchy convolutions.
template <int N>
struct Jet {
  std::array<double, N + 1> a{};  // a[k] = f^(k)/k!

  Jet() = default;

  // Constant jet (all derivatives zero).
  explicit Jet(double value) { a[0] = value; }

  // Jet of the identity coordinate t evaluated at t0.
  static Jet variable(double t0) {
    Jet j;
    j.a[0] = t0;
    if constexpr (N >= 1) j.a[1] = 1.0;
    return j;
  }

  double value() const { return a[0]; }

  // Raw derivative of order k (Taylor coefficient times k!).
  double derivative(int k) const {
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    return a[static_cast<std::size_t>(k)] * fact;
  }

  Jet operator-() const {
    Jet r;
    for (int k = 0; k <= N; ++k) r.a[k] = -a[k];
    return r;
  }
};

//----------------------------------------------------------------------------
// Arithmetic

template <int N>
Jet<N> operator+(const Jet<N>& x, const Jet<N>& y) {
  Jet<N> r;
  for (int k = 0; k <= N; ++k) r.a[k] = x.a[k] + y.a[k];
  return r;
}

template <int N>
Jet<N> operator-(const Jet<N>& x, const Jet<N>& y) {
  Jet<N> r;
  for (int k = 0; k <= N; ++k) r.a[k] = x.a[k] - y.a[k];
  return r;
}

template <int N>
Jet<N> operator*(const Jet<N>& x, const Jet<N>& y) {
  Jet<N> r;
  for (int k = 0; k <= N; ++k) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += x.a[i] * y.a[k - i];
    r.a[k] = s;
  }
  return r;
}

// Quotient by long division: q_k = (x_k - sum_{i<k} q_i y_{k-i}) / y_0.
template <int N>
Jet<N> operator/(const Jet<N>& x, const Jet<N>& y) {
  Jet<N> q;
  for (int k = 0; k <= N; ++k) {
    double s = x.a[k];
    for (int i = 0; i < k; ++i) s -= q.a[i] * y.a[k - i];
    q.a[k] = s / y.a[0];
  }
  return q;
}

template <int N> Jet<N> operator+(const Jet<N>& x, double c) { Jet<N> r = x; r.a[0] += c; return r; }
template <int N> Jet<N> operator+(double c, const Jet<N>& x) { return x + c; }
template <int N> Jet<N> operator-(const Jet<N>& x, double c) { Jet<N> r = x; r.a[0] -= c; return r; }
template <int N> Jet<N> operator-(double c, const Jet<N>& x) { return (-x) + c; }

template <int N>
Jet<N> operator*(const Jet<N>& x, double c) {
  Jet<N> r;
  for (int k = 0; k <= N; ++k) r.a[k] = x.a[k] * c;
  return r;
}
template <int N> Jet<N> operator*(double c, const Jet<N>& x) { return x * c; }
template <int N> Jet<N> operator/(const Jet<N>& x, double c) { return x * (1.0 / c); }
template <int N> Jet<N> operator/(double c, const Jet<N>& x) { return Jet<N>(c) / x; }

// exp via the first-order recurrence (exp f)' = f' exp f:
//   (k+1) e_{k+1} = sum_{j=0..k} (j+1) f_{j+1} e_{k-j}.
template <int N>
Jet<N> exp(const Jet<N>& x) {
  Jet<N> r;
  r.a[0] = std::exp(x.a[0]);
  for (int k = 0; k < N; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += (j + 1) * x.a[j + 1] * r.a[k - j];
    r.a[k + 1] = s / (k + 1);
  }
  return r;
}

//----------------------------------------------------------------------------
// Smooth plateau window

// Order used throughout the profile layer: enough for curvature (2 derivatives
// of a regularized ratio) on top of a 4th-order series fallback.
inline constexpr int kJetOrder = 6;
using Jet6 = Jet<kJetOrder>;

// e(s) = exp(-1/s) for s > 0, identically 0 for s <= 0 (flat C-infinity glue).
template <int N>
Jet<N> bump_e(const Jet<N>& s) {
  if (s.a[0] <= 0.0) return Jet<N>{};        // flat zero branch
  return exp(-(1.0 / s));
}

// Ramp B(s) = e(s)/(e(s)+e(1-s)): 0 for s<=0, 1 for s>=1, strictly increasing
// in between, with B(s)+B(1-s)=1.
template <int N>
Jet<N> bump_ramp(const Jet<N>& s) {
  if (s.a[0] <= 0.0) return Jet<N>{};
  if (s.a[0] >= 1.0) return Jet<N>(1.0);
  Jet<N> up = bump_e(s);
  Jet<N> dn = bump_e(1.0 - s);
  return up / (up + dn);
}

// Plateau window W(t; l0,l1,r1,r0): 0 outside (l0,r0), 1 on [l1,r1], smooth
// monotone ramps in between.  Requires l0 < l1 <= r1 < r0.
template <int N>
Jet<N> window(const Jet<N>& t, double l0, double l1, double r1, double r0) {
  Jet<N> left = bump_ramp((t - l0) / (l1 - l0));
  Jet<N> right = bump_ramp((r0 - t) / (r0 - r1));
  return left * right;
}

// Value-only conveniences.
inline double window_value(double t, double l0, double l1, double r1, double r0) {
  return window(Jet<1>::variable(t), l0, l1, r1, r0).value();
}

}  // namespace zoll

#endif  // ZOLL_JET_HPP_
