// zollgeo: spec validation (implementation).

#include "zoll/validate.hpp"

// C++ headers
#include <algorithm>   // max, min
#include <cmath>       // fabs
#include <functional>  // function
#include <sstream>     // ostringstream

namespace zoll {

namespace {

constexpr int kGridPoints = 2001;
constexpr double kOddnessTol = 1e-10;
constexpr double kTaylorTol = 1e-10;
constexpr double kBoundTol = 1e-10;

void add(ValidationReport& report, const char* code, ViolationClass category,
         int profile, double magnitude, const std::string& detail) {
  Violation v;
  v.code = code;
  v.category = category;
  v.profile = profile;
  v.magnitude = magnitude;
  v.detail = detail;
  report.violations.push_back(v);
}

// sup over a symmetric 2001-point grid of |s(t) + s(-t)| on [0, radius].
double odd_defect(const std::function<double(double)>& s, double radius) {
  double worst = 0.0;
  const int half = kGridPoints / 2;
  for (int i = 0; i <= half; ++i) {
    const double t = radius * static_cast<double>(i) / half;
    worst = std::max(worst, std::fabs(s(t) + s(-t)));
  }
  return worst;
}

// Minimum of the profile over a 2001-point grid spanning its support.
double grid_min(const KappaProfile& kap) {
  const double radius = kap.support_radius() + 0.5;
  double lowest = 0.0;
  for (int i = 0; i < kGridPoints; ++i) {
    const double t = -radius + 2.0 * radius * i / (kGridPoints - 1);
    lowest = std::min(lowest, kap.value(t));
  }
  return lowest;
}

// Largest value of |kappa| over grid points of [lo, hi] (support checks).
double sup_on_interval(const KappaProfile& kap, double lo, double hi) {
  double worst = 0.0;
  for (int i = 0; i < kGridPoints; ++i) {
    const double t = lo + (hi - lo) * i / (kGridPoints - 1);
    worst = std::max(worst, std::fabs(kap.value(t)));
  }
  return worst;
}

void check_lower_bound(ValidationReport& report, const KappaProfile& kap,
                       int index, double bound) {
  const double lowest = grid_min(kap);
  if (lowest < bound - kBoundTol) {
    std::ostringstream detail;
    detail << "profile " << index << " dips to " << lowest
           << ", below the admissible bound " << bound;
    add(report, "admissibility-lower-bound", ViolationClass::kAdmissibility,
        index, bound - lowest, detail.str());
  }
}

void check_taylor_matching(ValidationReport& report,
                           const std::vector<KappaProfile>& kappas, double at) {
  for (std::size_t j = 1; j < kappas.size(); ++j) {
    double worst = 0.0;
    for (int order = 0; order <= 4; ++order) {
      worst = std::max(worst, std::fabs(kappas[j].derivative(at, order) -
                                        kappas[0].derivative(at, order)));
    }
    if (worst > kTaylorTol) {
      std::ostringstream detail;
      detail << "profile " << j << " and profile 0 disagree at t = " << at
             << " within Taylor order 4 by " << worst;
      add(report, "taylor-matching", ViolationClass::kCertificate,
          static_cast<int>(j), worst, detail.str());
    }
  }
}

//----------------------------------------------------------------------------

void validate_parabolic(ValidationReport& report, const SurfaceSpec& spec) {
  for (std::size_t j = 0; j < spec.kappas.size(); ++j) {
    const KappaProfile& kap = spec.kappas[j];
    check_lower_bound(report, kap, static_cast<int>(j), -1.0);

    const double origin =
        std::max(std::fabs(kap.value(0.0)), std::fabs(kap.derivative(0.0, 1)));
    if (origin > kTaylorTol) {
      std::ostringstream detail;
      detail << "profile " << j
             << " must have a double zero at the corner (kappa(0) = "
             << kap.value(0.0) << ", kappa'(0) = " << kap.derivative(0.0, 1)
             << ")";
      add(report, "profile-origin-zero", ViolationClass::kAdmissibility,
          static_cast<int>(j), origin, detail.str());
    }
  }

  check_taylor_matching(report, spec.kappas, 0.0);

  const double radius = spec.support_radius() + 1.0;
  const double defect = odd_defect(
      [&spec](double t) {
        double sum = 0.0;
        for (const KappaProfile& kap : spec.kappas) sum += kap.value(t);
        return sum;
      },
      radius);
  if (defect > kOddnessTol) {
    std::ostringstream detail;
    detail << "sum of the " << spec.kappas.size()
           << " profiles is not odd (sup |S(t)+S(-t)| = " << defect << ")";
    add(report, "sum-oddness", ViolationClass::kCertificate, -1, defect,
        detail.str());
  }

  if (std::fabs(spec.tau) > 1e-12) {
    add(report, "translation-zero", ViolationClass::kCertificate, -1,
        std::fabs(spec.tau),
        "closure certificate needs a vanishing gluing translation");
  }
}

void validate_elliptic(ValidationReport& report, const SurfaceSpec& spec) {
  const KappaProfile& kap = spec.kappas.front();

  if (!(spec.tau > 0.0)) {
    add(report, "translation-positive", ViolationClass::kAdmissibility, -1,
        std::fabs(spec.tau) + (spec.tau == 0.0 ? 1.0 : 0.0),
        "the cylinder period tau must be positive");
  }
  if (spec.p == 0 || spec.q == 0) {
    add(report, "winding-primitive", ViolationClass::kAdmissibility, -1, 1.0,
        "winding numbers p and q must be nonzero");
  } else {
    if (spec.tau > 0.0) check_lower_bound(report, kap, 0, -spec.shift());
    if (spec.p != 1) {
      std::ostringstream detail;
      detail << "all geodesics close only for primitive winding p = 1 (got p = "
             << spec.p << ")";
      add(report, "winding-primitive", ViolationClass::kCertificate, -1,
          std::fabs(spec.p - 1.0), detail.str());
    }
  }

  const double defect = odd_defect(
      [&kap](double t) { return kap.value(t); }, kap.support_radius() + 1.0);
  if (defect > kOddnessTol) {
    std::ostringstream detail;
    detail << "profile is not odd (sup |kappa(t)+kappa(-t)| = " << defect
           << ")";
    add(report, "kappa-oddness", ViolationClass::kCertificate, 0, defect,
        detail.str());
  }
}

void validate_hyperbolic(ValidationReport& report, const SurfaceSpec& spec) {
  for (std::size_t j = 0; j < spec.kappas.size(); ++j) {
    const KappaProfile& kap = spec.kappas[j];
    check_lower_bound(report, kap, static_cast<int>(j), -1.0);

    const double edge =
        std::max(std::fabs(kap.value(1.0)), std::fabs(kap.value(-1.0)));
    if (edge > kTaylorTol) {
      std::ostringstream detail;
      detail << "profile " << j << " must vanish at the band edges (kappa(1) = "
             << kap.value(1.0) << ", kappa(-1) = " << kap.value(-1.0) << ")";
      add(report, "band-edge-zero", ViolationClass::kAdmissibility,
          static_cast<int>(j), edge, detail.str());
    }
  }

  check_taylor_matching(report, spec.kappas, -1.0);
  check_taylor_matching(report, spec.kappas, 1.0);

  // Full sum odd across the band.
  const double band_defect = odd_defect(
      [&spec](double t) {
        double sum = 0.0;
        for (const KappaProfile& kap : spec.kappas) sum += kap.value(t);
        return sum;
      },
      1.0);
  if (band_defect > kOddnessTol) {
    std::ostringstream detail;
    detail << "sum of all profiles is not odd on [-1,1] (defect "
           << band_defect << ")";
    add(report, "sum-oddness", ViolationClass::kCertificate, -1, band_defect,
        detail.str());
  }

  // Even-index and odd-index sums odd outside the band: sample |t| >= 1 and
  // fold, S(t) + S(-t) for t in [1, R].
  const double radius = spec.support_radius() + 1.0;
  for (int parity = 0; parity < 2; ++parity) {
    double worst = 0.0;
    const int half = kGridPoints / 2;
    for (int i = 0; i <= half; ++i) {
      const double t = 1.0 + (radius - 1.0) * static_cast<double>(i) / half;
      double folded = 0.0;
      for (std::size_t j = static_cast<std::size_t>(parity);
           j < spec.kappas.size(); j += 2) {
        folded += spec.kappas[j].value(t) + spec.kappas[j].value(-t);
      }
      worst = std::max(worst, std::fabs(folded));
    }
    if (worst > kOddnessTol) {
      std::ostringstream detail;
      detail << "sum of the " << (parity == 0 ? "even" : "odd")
             << "-index profiles is not odd outside the band (defect " << worst
             << ")";
      add(report, "sum-oddness", ViolationClass::kCertificate, -1, worst,
          detail.str());
    }
  }

  if (std::fabs(spec.tau) > 1e-12) {
    add(report, "translation-zero", ViolationClass::kCertificate, -1,
        std::fabs(spec.tau),
        "closure certificate needs a vanishing gluing translation");
  }
}

}  // namespace

//----------------------------------------------------------------------------

bool ValidationReport::admissible() const {
  for (const Violation& v : violations) {
    if (v.category == ViolationClass::kAdmissibility) return false;
  }
  return true;
}

bool ValidationReport::zoll_certified() const { return violations.empty(); }

ValidationReport validate(const SurfaceSpec& spec) {
  ValidationReport report;
  switch (spec.family) {
    case Family::kParabolic:
      validate_parabolic(report, spec);
      break;
    case Family::kElliptic:
      validate_elliptic(report, spec);
      break;
    case Family::kHyperbolic:
      validate_hyperbolic(report, spec);
      break;
  }
  return report;
}

ValidationReport validate_blaschke(const BlaschkeSpec& spec) {
  ValidationReport report;

  check_lower_bound(report, spec.kappa1, 0, -1.0);
  check_lower_bound(report, spec.kappa2, 1, -1.0);

  const double defect1 =
      odd_defect([&spec](double t) { return spec.kappa1.value(t); },
                 spec.kappa1.support_radius() + 1.0);
  if (defect1 > kOddnessTol) {
    std::ostringstream detail;
    detail << "first profile is not odd (defect " << defect1 << ")";
    add(report, "kappa-oddness", ViolationClass::kCertificate, 0, defect1,
        detail.str());
  }
  const double defect2 =
      odd_defect([&spec](double t) { return spec.kappa2.value(t); },
                 spec.kappa2.support_radius() + 1.0);
  if (defect2 > kOddnessTol) {
    std::ostringstream detail;
    detail << "second profile is not odd (defect " << defect2 << ")";
    add(report, "kappa-oddness", ViolationClass::kCertificate, 1, defect2,
        detail.str());
  }

  // Support containment keeps the two deformation regions disjoint.
  const double r1 = spec.kappa1.support_radius();
  double outside1 = 0.0;
  if (r1 > 1.0) outside1 = sup_on_interval(spec.kappa1, 1.0, r1 + 1.0);
  outside1 = std::max(
      outside1, r1 > 1.0 ? sup_on_interval(spec.kappa1, -r1 - 1.0, -1.0) : 0.0);
  if (outside1 > 1e-12) {
    std::ostringstream detail;
    detail << "first profile leaks outside [-1,1] (sup " << outside1 << ")";
    add(report, "support-containment", ViolationClass::kAdmissibility, 0,
        outside1, detail.str());
  }

  const double r2 = spec.kappa2.support_radius();
  double outside2 = sup_on_interval(spec.kappa2, -4.0, 4.0);
  if (r2 > 5.0) {
    outside2 = std::max(outside2, sup_on_interval(spec.kappa2, 5.0, r2 + 1.0));
    outside2 =
        std::max(outside2, sup_on_interval(spec.kappa2, -r2 - 1.0, -5.0));
  }
  if (outside2 > 1e-12) {
    std::ostringstream detail;
    detail << "second profile leaks outside [-5,-4] u [4,5] (sup " << outside2
           << ")";
    add(report, "support-containment", ViolationClass::kAdmissibility, 1,
        outside2, detail.str());
  }

  return report;
}

}  // namespace zoll
