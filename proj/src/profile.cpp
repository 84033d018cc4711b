// zollgeo: deformation-profile implementation.

// C++ headers
#include <algorithm>    // max, min, sort, unique, upper_bound
#include <cmath>        // abs, atan
#include <sstream>      // ostringstream
#include <stdexcept>    // invalid_argument
#include <vector>       // vector

// zollgeo headers
#include "zoll/profile.hpp"
#include "zoll/gauss.hpp"  // gauss_composite

namespace zoll {

namespace {

//----------------------------------------------------------------------------
// Local helpers

// Polynomial (constant-first coefficients) evaluated on a jet by Horner.
Jet6 poly_jet(const std::vector<double>& coeffs, const Jet6& t) {
  Jet6 r;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * t + *it;
  return r;
}

// Monomial coefficients (constant first, in d = t - t0) of the quintic with
// prescribed value and first two derivatives at d = 0 and d = H.
std::array<double, 6> hermite_quintic(double H, double v0, double s0, double c0,
                                      double v1, double s1, double c1) {
  std::array<double, 6> c{};
  c[0] = v0;
  c[1] = s0;
  c[2] = 0.5 * c0;
  const double A = (v1 - (c[0] + c[1] * H + c[2] * H * H)) / (H * H * H);
  const double B = (s1 - (c[1] + 2.0 * c[2] * H)) / (H * H);
  const double C = (c1 - 2.0 * c[2]) / H;
  c[5] = (C + 12.0 * A - 6.0 * B) / (2.0 * H * H);
  c[4] = (B - 3.0 * A - 2.0 * c[5] * H * H) / H;
  c[3] = A - c[4] * H - c[5] * H * H;
  return c;
}

// integral_a^b f by panel-doubling composite Gauss-Legendre.  The integrands
// here are smooth but only piecewise-analytic (window glue points), so the
// caller splits at breakpoints and this routine doubles panels until the
// estimate is stable.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  double prev = gauss_composite(f, a, b, 16, 4);
  for (int panels = 8; panels <= 1024; panels *= 2) {
    double cur = gauss_composite(f, a, b, 16, panels);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace

//----------------------------------------------------------------------------
// Factories

KappaProfile KappaProfile::zero() { return KappaProfile(); }

KappaProfile KappaProfile::odd_rational(double amplitude) {
  KappaProfile p;
  p.kind_ = Kind::kOddRational;
  p.amplitude_ = amplitude;
  return p;
}

KappaProfile KappaProfile::terms(std::vector<ProfileTerm> terms) {
  for (const ProfileTerm& term : terms) {
    if (!(term.l0 < term.l1 && term.l1 <= term.r1 && term.r1 < term.r0)) {
      std::ostringstream sout;
      sout << "KappaProfile::terms: window knots must satisfy l0 < l1 <= r1 < r0, got ["
           << term.l0 << ", " << term.l1 << ", " << term.r1 << ", " << term.r0 << "]";
      throw std::invalid_argument(sout.str());
    }
  }
  KappaProfile p;
  p.kind_ = Kind::kTerms;
  p.terms_ = std::move(terms);
  for (const ProfileTerm& term : p.terms_) {
    p.breakpoints_.push_back(term.l0);
    p.breakpoints_.push_back(term.l1);
    p.breakpoints_.push_back(term.r1);
    p.breakpoints_.push_back(term.r0);
  }
  std::sort(p.breakpoints_.begin(), p.breakpoints_.end());
  p.breakpoints_.erase(std::unique(p.breakpoints_.begin(), p.breakpoints_.end()),
                       p.breakpoints_.end());
  return p;
}

KappaProfile KappaProfile::spline(std::vector<SplineKnot> knots) {
  if (knots.size() < 2) {
    throw std::invalid_argument("KappaProfile::spline: need at least two knots");
  }
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (!(knots[i].t < knots[i + 1].t)) {
      std::ostringstream sout;
      sout << "KappaProfile::spline: knot abscissae must be strictly increasing, got "
           << knots[i].t << " then " << knots[i + 1].t;
      throw std::invalid_argument(sout.str());
    }
  }
  KappaProfile p;
  p.kind_ = Kind::kSpline;
  p.knots_ = std::move(knots);
  p.piece_coeffs_.reserve(p.knots_.size() - 1);
  for (std::size_t i = 0; i + 1 < p.knots_.size(); ++i) {
    const SplineKnot& a = p.knots_[i];
    const SplineKnot& b = p.knots_[i + 1];
    p.piece_coeffs_.push_back(
        hermite_quintic(b.t - a.t, a.value, a.d1, a.d2, b.value, b.d1, b.d2));
  }
  for (const SplineKnot& knot : p.knots_) p.breakpoints_.push_back(knot.t);
  return p;
}

//----------------------------------------------------------------------------
// Point queries

Jet6 KappaProfile::jet(double t) const {
  switch (kind_) {
    case Kind::kZero:
      return Jet6{};
    case Kind::kOddRational: {
      const Jet6 x = Jet6::variable(t);
      const Jet6 x2 = x * x;
      return (amplitude_ * (x2 * x)) / (x2 * x2 + 1.0);
    }
    case Kind::kTerms: {
      const Jet6 x = Jet6::variable(t);
      Jet6 sum;
      for (const ProfileTerm& term : terms_) {
        if (t <= term.l0 || t >= term.r0) continue;  // window vanishes to all orders
        sum = sum + poly_jet(term.poly, x) * window(x, term.l0, term.l1, term.r1, term.r0);
      }
      return sum;
    }
    case Kind::kSpline: {
      if (t < knots_.front().t || t > knots_.back().t) return Jet6{};
      std::size_t piece = 0;
      while (piece + 2 < knots_.size() && t >= knots_[piece + 1].t) ++piece;
      const Jet6 d = Jet6::variable(t) - knots_[piece].t;
      const std::array<double, 6>& c = piece_coeffs_[piece];
      Jet6 r;
      for (int k = 5; k >= 0; --k) r = r * d + c[k];
      return r;
    }
  }
  return Jet6{};
}

double KappaProfile::derivative(double t, int order) const {
  if (order < 0 || order > kJetOrder) {
    std::ostringstream sout;
    sout << "KappaProfile::derivative: order must lie in [0, " << kJetOrder
         << "], got " << order;
    throw std::invalid_argument(sout.str());
  }
  return jet(t).derivative(order);
}

//----------------------------------------------------------------------------
// Integral queries

double KappaProfile::primitive_over_square(double t) const {
  switch (kind_) {
    case Kind::kZero:
      return 0.0;
    case Kind::kOddRational:
      // integral_0^t amplitude * s/(1+s^4) ds, even in t.
      return 0.5 * amplitude_ * std::atan(t * t);
    case Kind::kTerms:
    case Kind::kSpline: {
      const double lo = std::min(0.0, t), hi = std::max(0.0, t);
      std::vector<double> cuts;
      cuts.push_back(lo);
      for (double b : breakpoints_) {
        if (b > lo && b < hi) cuts.push_back(b);
      }
      cuts.push_back(hi);
      const auto integrand = [this](double s) {
        return ratio_over_square(*this, s).value();
      };
      double total = 0.0;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += integrate_adaptive(integrand, cuts[i], cuts[i + 1], 1e-13);
      }
      return (t >= 0.0) ? total : -total;
    }
  }
  return 0.0;
}

double KappaProfile::limit_at_minus_infinity() const {
  switch (kind_) {
    case Kind::kZero:
      return 0.0;
    case Kind::kOddRational:
      // atan(t^2) -> pi/2.
      return 0.25 * amplitude_ * 3.14159265358979323846264338327950288;
    case Kind::kTerms:
    case Kind::kSpline:
      // The integrand vanishes left of the leftmost breakpoint.
      if (breakpoints_.empty()) return 0.0;
      return primitive_over_square(std::min(0.0, breakpoints_.front()));
  }
  return 0.0;
}

//----------------------------------------------------------------------------
// Structure queries

double KappaProfile::support_radius() const {
  switch (kind_) {
    case Kind::kZero:
      return 0.0;
    case Kind::kOddRational:
      // Unbounded support; the extrema sit at |t| = 3^(1/4), and beyond this
      // radius the tail is O(amplitude/t).
      return 10.0;
    case Kind::kTerms:
    case Kind::kSpline: {
      double r = 0.0;
      for (double b : breakpoints_) r = std::max(r, std::abs(b));
      return r;
    }
  }
  return 0.0;
}

//----------------------------------------------------------------------------
// Regularized ratios

Jet<2> ratio_over_square(const KappaProfile& kappa, double y) {
  if (std::abs(y) >= kRatioGuard) {
    const Jet6 k = kappa.jet(y);
    Jet<2> num;
    num.a = {k.a[0], k.a[1], k.a[2]};
    const Jet<2> yj = Jet<2>::variable(y);
    return num / (yj * yj);
  }
  // Series of kappa at 0: kappa/y^2 = a2 + a3 y + ... (+ a0/y^2 + a1/y when
  // the double zero is absent; those parts are meaningful only for y != 0).
  const Jet6 c = kappa.jet(0.0);
  double v = c.a[2] + y * (c.a[3] + y * (c.a[4] + y * (c.a[5] + y * c.a[6])));
  double d1 = c.a[3] + y * (2.0 * c.a[4] + y * (3.0 * c.a[5] + y * 4.0 * c.a[6]));
  double d2 = 2.0 * c.a[4] + y * (6.0 * c.a[5] + y * 12.0 * c.a[6]);
  if ((c.a[0] != 0.0 || c.a[1] != 0.0) && y != 0.0) {
    const double y2 = y * y;
    v += c.a[0] / y2 + c.a[1] / y;
    d1 += -2.0 * c.a[0] / (y2 * y) - c.a[1] / y2;
    d2 += 6.0 * c.a[0] / (y2 * y2) + 2.0 * c.a[1] / (y2 * y);
  }
  Jet<2> r;
  r.a = {v, d1, 0.5 * d2};
  return r;
}

Jet<2> ratio_over_square_minus_one(const KappaProfile& kappa, double y) {
  if (std::abs(y - 1.0) >= kRatioGuard && std::abs(y + 1.0) >= kRatioGuard) {
    const Jet6 k = kappa.jet(y);
    Jet<2> num;
    num.a = {k.a[0], k.a[1], k.a[2]};
    const Jet<2> yj = Jet<2>::variable(y);
    return num / (yj * yj - 1.0);
  }
  // Near the singular point s = ±1 write kappa/(y^2-1) = N(y)/(y+s) with
  // N = kappa/(y-s) expanded from the series of kappa at s.
  const double s = (y > 0.0) ? 1.0 : -1.0;
  const Jet6 b = kappa.jet(s);
  const double d = y - s;
  double n = b.a[1] + d * (b.a[2] + d * (b.a[3] + d * (b.a[4] + d * (b.a[5] + d * b.a[6]))));
  double n1 = b.a[2] +
              d * (2.0 * b.a[3] + d * (3.0 * b.a[4] + d * (4.0 * b.a[5] + d * 5.0 * b.a[6])));
  double n2 = 2.0 * b.a[3] + d * (6.0 * b.a[4] + d * (12.0 * b.a[5] + d * 20.0 * b.a[6]));
  if (b.a[0] != 0.0 && d != 0.0) {
    n += b.a[0] / d;
    n1 -= b.a[0] / (d * d);
    n2 += 2.0 * b.a[0] / (d * d * d);
  }
  Jet<2> num;
  num.a = {n, n1, 0.5 * n2};
  return num / (Jet<2>::variable(y) + s);
}

//----------------------------------------------------------------------------
// Metric coefficient f

ValueAndDerivative f_from_kappa_d(Family family, const KappaProfile& kappa,
                                  double shift, double y) {
  const Jet6 k = kappa.jet(y);
  switch (family) {
    case Family::kParabolic: {
      // f = (1 - s^2)/y^2 - (2s + kappa) * kappa/y^2; the first part is 0 for
      // the standard shift s = 1 and must be skipped (it is singular at y=0).
      const Jet<2> q = ratio_over_square(kappa, y);
      double v = -(2.0 * shift + k.a[0]) * q.a[0];
      double d = -k.a[1] * q.a[0] - (2.0 * shift + k.a[0]) * q.a[1];
      if (shift != 1.0) {
        const double w = y * y;
        v += (1.0 - shift * shift) / w;
        d -= 2.0 * (1.0 - shift * shift) / (w * y);
      }
      return {v, d};
    }
    case Family::kElliptic: {
      const double u = shift + k.a[0];
      const double w = 1.0 + y * y;
      const double v = (1.0 - u * u) / w;
      const double d = -2.0 * u * k.a[1] / w - v * 2.0 * y / w;
      return {v, d};
    }
    case Family::kHyperbolic: {
      const Jet<2> q = ratio_over_square_minus_one(kappa, y);
      double v = -(2.0 * shift + k.a[0]) * q.a[0];
      double d = -k.a[1] * q.a[0] - (2.0 * shift + k.a[0]) * q.a[1];
      if (shift != 1.0) {
        const double w = y * y - 1.0;
        v += (1.0 - shift * shift) / w;
        d -= 2.0 * y * (1.0 - shift * shift) / (w * w);
      }
      return {v, d};
    }
  }
  return {0.0, 0.0};
}

double f_from_kappa(Family family, const KappaProfile& kappa, double shift, double y) {
  return f_from_kappa_d(family, kappa, shift, y).value;
}

}  // namespace zoll
