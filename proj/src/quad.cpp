// zollgeo: singular quadrature and integral functionals.

// C++ headers
#include <algorithm>  // max, min
#include <cmath>      // abs, atan, cos, isfinite, sin, sqrt
#include <sstream>    // ostringstream
#include <stdexcept>  // invalid_argument, runtime_error

// zollgeo headers
#include "zoll/atlas.hpp"  // profile_index
#include "zoll/gauss.hpp"  // gauss_legendre
#include "zoll/quad.hpp"

namespace zoll {

namespace {

// One Gauss-Chebyshev pass at n nodes (n even), pair-summed and compensated.
double chebyshev_pass(const std::function<double(double)>& phi, double c, int n) {
  double sum = 0.0, carry = 0.0;
  for (int i = 1; i <= n / 2; ++i) {
    const double y = c * std::cos((2 * i - 1) * kPi / (2 * n));
    const double term = phi(y) + phi(-y);
    if (!std::isfinite(term)) {
      std::ostringstream msg;
      msg << "integrand is not finite near y = +-" << y;
      throw std::runtime_error(msg.str());
    }
    const double t = sum + term;
    carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return (sum + carry) * kPi / n;
}

void require_family(const SurfaceSpec& spec, Family family, const char* op) {
  if (spec.family != family) {
    std::ostringstream msg;
    msg << op << " applies to a different surface family";
    throw std::invalid_argument(msg.str());
  }
}

void require_clairaut(double c, double lower) {
  if (!(c > lower)) {
    std::ostringstream msg;
    msg << "Clairaut constant " << c << " must exceed " << lower;
    throw std::invalid_argument(msg.str());
  }
}

// integral_0^{pi/2} g(t) dt with a cached Gauss-Legendre rule.
double quarter_period(const std::function<double(double)>& g, int n) {
  const GaussRule& rule = gauss_legendre(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = (rule.nodes[i] + 1.0) * kPi / 4.0;
    sum += rule.weights[i] * g(t);
  }
  return sum * kPi / 4.0;
}

}  // namespace

//----------------------------------------------------------------------------

QuadratureResult chebyshev_singular(const std::function<double(double)>& phi,
                                    double c, int n) {
  if (!(c > 0.0)) throw std::invalid_argument("chebyshev_singular needs c > 0");
  if (n < 2) n = 2;
  if (n % 2 != 0) ++n;
  QuadratureResult result;
  const double coarse = chebyshev_pass(phi, c, n);
  result.value = chebyshev_pass(phi, c, 2 * n);
  result.error_estimate = std::abs(result.value - coarse);
  result.evaluations = 3LL * n;
  return result;
}

//----------------------------------------------------------------------------

// The Chebyshev rule loses accuracy once the support occupies a small
// fraction of (-c,c) (its nodes thin out near the center), so for c
// comfortably beyond the support switch to plain Gauss-Legendre over
// [-radius, radius], where the kernel 1/sqrt(c^2-y^2) is smooth.
double weighted_band_integral(const std::function<double(double)>& phi,
                              double c, double radius, int nodes) {
  if (radius > 1e-9 && c > 1.25 * radius) {
    auto weighted = [&phi, c](double y) {
      return phi(y) / std::sqrt(c * c - y * y);
    };
    return gauss_composite(weighted, -radius, radius, 64, 16);
  }
  return chebyshev_singular(phi, c, nodes).value;
}

//----------------------------------------------------------------------------

double closure_residual_parabolic(const SurfaceSpec& spec, double c, int nodes) {
  require_family(spec, Family::kParabolic, "closure_residual_parabolic");
  require_clairaut(c, 0.0);
  auto phi = [&spec, c](double y) {
    double sum = 0.0;
    for (const KappaProfile& kappa : spec.kappas) {
      sum += ratio_over_square(kappa, y).value();
    }
    return 2.0 * c * sum;
  };
  return weighted_band_integral(phi, c, spec.support_radius(), nodes) + spec.tau;
}

double closure_residual_elliptic(const SurfaceSpec& spec, double c, int nodes) {
  require_family(spec, Family::kElliptic, "closure_residual_elliptic");
  require_clairaut(c, 0.0);
  const double r = spec.shift();
  const double scale = std::sqrt(c * c + 1.0);
  auto phi = [&spec, r, scale](double y) {
    const double w = y * y + 1.0;
    const double f = f_from_kappa(Family::kElliptic, spec.kappas[0], r, y);
    const double radicand = std::max(0.0, 1.0 - f * w);
    return scale * (std::sqrt(radicand) - r) / w;
  };
  return weighted_band_integral(phi, c, spec.support_radius(), nodes);
}

double closure_residual_hyperbolic(const SurfaceSpec& spec, double c, int i0,
                                   int nodes) {
  require_family(spec, Family::kHyperbolic, "closure_residual_hyperbolic");
  require_clairaut(c, 1.0);
  if (i0 % 2 != 0) {
    throw std::invalid_argument("the hyperbolic band is labeled by an even chart index");
  }
  const int n = 4 * spec.k;
  i0 = ((i0 % n) + n) % n;
  const double scale = std::sqrt(c * c - 1.0);
  auto phi = [&spec, i0, n, scale](double y) {
    double sum = 0.0;
    for (int i = 0; i < 2 * spec.k; ++i) {
      const int m = (2 * i + i % 2 + i0) % n;
      const KappaProfile& kappa = spec.kappas[profile_index(spec, m, y)];
      sum += ratio_over_square_minus_one(kappa, y).value();
    }
    return scale * sum;
  };
  return weighted_band_integral(phi, c, spec.support_radius(), nodes);
}

double closure_residual(const SurfaceSpec& spec, double c, int i0, int nodes) {
  switch (spec.family) {
    case Family::kParabolic: return closure_residual_parabolic(spec, c, nodes);
    case Family::kElliptic: return closure_residual_elliptic(spec, c, nodes);
    case Family::kHyperbolic: return closure_residual_hyperbolic(spec, c, i0, nodes);
  }
  throw std::invalid_argument("unknown family");
}

//----------------------------------------------------------------------------

double abel_H(const std::function<double(double)>& h, double c, int nodes) {
  auto phi = [&h, c](double y) { return c * h(y) / (y * y); };
  return chebyshev_singular(phi, c, nodes).value;
}

double abel_I(const std::function<double(double)>& h, double a, int nodes) {
  require_clairaut(a, 0.0);
  // The inner transform is spectrally convergent, so its resolution is
  // capped; the outer integrand inherits compactly-supported-smooth wiggles
  // from h, which composite panels resolve where one big panel stalls.
  const int inner = std::min(std::max(nodes, 64), 4096);
  auto g = [&h, a, inner](double t) { return abel_H(h, a * std::sin(t), inner); };
  return gauss_composite(g, 0.0, 0.5 * kPi, 16, 16);
}

double abel_J_hyperbolic(const std::function<double(double)>& h, double a, int nodes) {
  require_clairaut(a, 1.0);
  const int order = std::min(std::max(nodes, 16), 256);
  auto h_hat = [&h, order](double c) {
    return quarter_period([&h, c](double t) { return h(c * std::sin(t)); }, order);
  };
  const double spread = std::sqrt(a * a - 1.0);
  auto g = [&h_hat, a, spread](double psi) {
    const double s = std::sin(psi);
    const double c = std::sqrt(a * a - (a * a - 1.0) * s * s);
    return h_hat(c) * std::cos(psi);
  };
  return spread * quarter_period(g, order);
}

double abel_J_identity_rhs(const std::function<double(double)>& h, double a, int nodes) {
  require_clairaut(a, 1.0);
  const int order = std::min(std::max(nodes, 16), 256);
  const double spread = std::sqrt(a * a - 1.0);
  const double mean = gauss_composite(h, 0.0, a, 32, 8);
  auto g = [&h, spread](double t) {
    const double ct = std::cos(t);
    return h(std::sin(t)) * std::atan(ct / spread) * ct;
  };
  return 0.5 * kPi * mean - quarter_period(g, order);
}

}  // namespace zoll
