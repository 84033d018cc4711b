// zollgeo: surface description factories.

// C++ headers
#include <algorithm>  // max
#include <sstream>    // ostringstream
#include <stdexcept>  // invalid_argument
#include <utility>    // move

// zollgeo headers
#include "zoll/spec.hpp"

namespace zoll {

namespace {

void require_profile_count(const char* family, std::size_t got, std::size_t want) {
  if (got != want) {
    std::ostringstream msg;
    msg << family << " surface expects " << want << " profile(s), got " << got;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

//----------------------------------------------------------------------------

SurfaceSpec SurfaceSpec::parabolic(int k, double tau, std::vector<KappaProfile> kappas) {
  if (k < 1) throw std::invalid_argument("parabolic surface expects k >= 1");
  require_profile_count("parabolic", kappas.size(), static_cast<std::size_t>(k));
  SurfaceSpec spec;
  spec.family = Family::kParabolic;
  spec.k = k;
  spec.tau = tau;
  spec.kappas = std::move(kappas);
  return spec;
}

SurfaceSpec SurfaceSpec::elliptic(double tau, int p, int q, KappaProfile kappa) {
  if (tau <= 0.0) throw std::invalid_argument("elliptic surface expects tau > 0");
  if (p < 1 || q < 1) throw std::invalid_argument("elliptic surface expects p, q >= 1");
  SurfaceSpec spec;
  spec.family = Family::kElliptic;
  spec.k = 1;
  spec.tau = tau;
  spec.p = p;
  spec.q = q;
  spec.kappas.push_back(std::move(kappa));
  return spec;
}

SurfaceSpec SurfaceSpec::hyperbolic(int k, double tau, std::vector<KappaProfile> kappas) {
  if (k < 1) throw std::invalid_argument("hyperbolic surface expects k >= 1");
  require_profile_count("hyperbolic", kappas.size(), static_cast<std::size_t>(2 * k));
  SurfaceSpec spec;
  spec.family = Family::kHyperbolic;
  spec.k = k;
  spec.tau = tau;
  spec.kappas = std::move(kappas);
  return spec;
}

int SurfaceSpec::chart_count() const {
  switch (family) {
    case Family::kParabolic: return 2 * k;
    case Family::kElliptic: return 1;
    case Family::kHyperbolic: return 4 * k;
  }
  return 0;
}

double SurfaceSpec::shift() const {
  if (family == Family::kElliptic) return p * tau / (2.0 * kPi * q);
  return 1.0;
}

double SurfaceSpec::support_radius() const {
  double radius = 0.0;
  for (const KappaProfile& kappa : kappas) {
    radius = std::max(radius, kappa.support_radius());
  }
  return radius;
}

}  // namespace zoll
