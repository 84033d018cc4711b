// zollgeo: spec-document ingestion and machine-readable emission helpers —
// strict JSON parsing into surface/blend specs, content fingerprints, and
// the fixed float formatting used by every emitted table.

#ifndef ZOLL_SPECIO_HPP_
#define ZOLL_SPECIO_HPP_

// C++ headers
#include <cstdint>    // uint64_t
#include <stdexcept>  // runtime_error
#include <string>     // string
#include <vector>     // vector

// zollgeo headers
#include "zoll/spec.hpp"  // SurfaceSpec, BlaschkeSpec

namespace zoll {

//----------------------------------------------------------------------------

// Input-side failure: malformed document, unknown keys, wrong profile
// counts, bad windows.  The CLI maps this to its input-error exit code.
class SpecParseError : public std::runtime_error {
 public:
  explicit SpecParseError(const std::string& what) : std::runtime_error(what) {}
};

// One sinusoidal correction term of a boundary graph.
struct BoundaryWave {
  double amplitude = 0.0;
  double phase = 0.0;
};

// Half of a boundary document: theta(s) = s + shift + sum of
// amplitude*sin(sqrt(2)*s + phase) terms.  The wave frequency is fixed at
// sqrt(2) so every representable graph is sqrt(2)*pi-equivariant.
struct BoundaryHalf {
  double shift = 0.0;
  std::vector<BoundaryWave> waves;
};

// A parsed spec document: exactly one of surface/blaschke/boundary is
// active, plus optional embedded scan defaults (command-line flags override
// them).
struct SpecDocument {
  bool is_blaschke = false;
  bool is_boundary = false;
  SurfaceSpec surface;
  BlaschkeSpec blaschke{KappaProfile::zero(), KappaProfile::zero()};
  BoundaryHalf theta_plus;
  BoundaryHalf theta_minus;

  std::string c_grid;   // "min:max:count:log|lin", empty when absent
  double tol = 0.0;
  bool has_tol = false;
  int nodes = 0;
  bool has_nodes = false;
  std::string out;      // default output path, empty when absent

  std::uint64_t fingerprint = 0;  // FNV-1a 64 of the raw document bytes
};

// Parses a JSON spec document.  Top-level keys: "family" (parabolic |
// elliptic | hyperbolic | blaschke | boundary), "k", "tau", "p", "q",
// "kappas" (profile descriptor list), "kappa1"/"kappa2" for the blend, or
// "theta-plus"/"theta-minus" for boundary data, plus the optional "scan"
// object {"c-grid", "tol", "nodes", "out"}.  Profile descriptors:
// {"type":"zero"}, {"type":"odd-rational","amplitude":A},
// {"type":"terms","terms":[{"poly":[...],"window":[l0,l1,r1,r0]},...]},
// {"type":"spline","knots":[{"t":..,"value":..,"d1":..,"d2":..},...]}.
// Boundary halves: {"shift":S,"waves":[{"amplitude":A,"phase":P},...]}.
// Unknown keys anywhere are rejected.  Throws SpecParseError with position
// diagnostics on malformed input.
SpecDocument parse_spec(const std::string& text);

// Reads and parses a spec file (fingerprint covers the file bytes).
SpecDocument load_spec(const std::string& path);

//----------------------------------------------------------------------------

// FNV-1a 64-bit content hash (spec fingerprints in emitted artifacts).
std::uint64_t fnv1a64(const std::string& bytes);

// 17-significant-digit float formatting: every table round-trips doubles
// bit-exactly.
std::string format_float(double v);

}  // namespace zoll

#endif  // ZOLL_SPECIO_HPP_
