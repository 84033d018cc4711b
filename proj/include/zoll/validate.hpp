// zollgeo: spec validation — admissibility checks that gate metric
// construction and the closure (Zoll) certificate conditions, reported as
// named violations with magnitudes rather than thrown errors.

#ifndef ZOLL_VALIDATE_HPP_
#define ZOLL_VALIDATE_HPP_

// C++ headers
#include <string>     // string
#include <vector>     // vector

// zollgeo headers
#include "zoll/spec.hpp"  // SurfaceSpec, BlaschkeSpec

namespace zoll {

//----------------------------------------------------------------------------

// Admissibility violations block metric construction (singular or undefined
// coefficients); certificate violations only mean the surface is not
// certified Zoll — the metric still exists, with nonzero closure residuals.
enum class ViolationClass { kAdmissibility, kCertificate };

struct Violation {
  std::string code;        // stable kebab-case identifier
  ViolationClass category = ViolationClass::kCertificate;
  int profile = -1;        // offending profile index, -1 when not per-profile
  double magnitude = 0.0;  // size of the defect in the checked quantity
  std::string detail;      // human-readable description
};

struct ValidationReport {
  std::vector<Violation> violations;

  // No admissibility violations: every metric coefficient is well defined.
  bool admissible() const;

  // Empty report: the closure certificate conditions all hold.
  bool zoll_certified() const;
};

//----------------------------------------------------------------------------

// Checks every invariant of the family spec and reports all failures.
//
// Violation codes by family:
//   parabolic:  admissibility-lower-bound (kappa < -1),
//               profile-origin-zero      (kappa(0) or kappa'(0) nonzero),
//               taylor-matching          (Taylor data at 0 differ, order <= 4),
//               sum-oddness              (sum of kappas not odd),
//               translation-zero         (tau != 0)
//   elliptic:   admissibility-lower-bound (kappa < -p tau/(2 pi q)),
//               translation-positive     (tau <= 0),
//               winding-primitive        (p != 1, or p or q zero),
//               kappa-oddness            (kappa not odd)
//   hyperbolic: admissibility-lower-bound, band-edge-zero (kappa(+-1) != 0),
//               taylor-matching          (Taylor data at -1 or +1 differ),
//               sum-oddness              (full sum on [-1,1]; even-index and
//                                         odd-index sums outside the band),
//               translation-zero
//
// Oddness and lower bounds are checked on 2001-point symmetric grids over
// the profile supports (tolerance 1e-10); Taylor matching compares
// derivative queries to order 4 at 1e-10 per order.
ValidationReport validate(const SurfaceSpec& spec);

// Blaschke blend checks: both profiles odd (certificate), supports contained
// in [-1,1] / [-5,-4] u [4,5] and values >= -1 (admissibility — the blend
// needs the two deformation regions to stay disjoint).
ValidationReport validate_blaschke(const BlaschkeSpec& spec);

}  // namespace zoll

#endif  // ZOLL_VALIDATE_HPP_
