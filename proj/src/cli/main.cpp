// zollgeo: command-line surface — spec ingestion, verification campaigns,
// scans, and machine-readable emission.
//
// Exit codes: 0 = every verdict passed, 1 = a mathematical verdict failed,
// 2 = input error (malformed document, unsupported combination, or a spec
// whose metric is not constructible).  Identical invocations produce
// byte-identical artifacts: node counts are fixed, grids are explicit, and
// the only random sweep (blend disjointness sampling) is seeded.

// C++ headers
#include <algorithm>   // max
#include <array>       // array
#include <cmath>       // fabs, log, exp, sinh, cosh
#include <cstdint>     // uint64_t
#include <cstdio>      // fprintf, snprintf
#include <fstream>     // ofstream
#include <functional>  // function
#include <iostream>    // cout
#include <random>      // mt19937_64, uniform_real_distribution
#include <sstream>     // ostringstream
#include <stdexcept>   // runtime_error
#include <string>      // string
#include <vector>      // vector

// vendor headers
#include "CLI11.hpp"  // CLI::App

// zollgeo headers
#include "zoll/atlas.hpp"
#include "zoll/conformal.hpp"
#include "zoll/geodesics.hpp"
#include "zoll/quad.hpp"
#include "zoll/specio.hpp"
#include "zoll/validate.hpp"
#include "zoll/version.hpp"

namespace zoll {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.4142135623730951;

// Input-side misuse detected past document parsing (wrong spec kind for a
// command, malformed grid strings).  Mapped to exit code 2 like parse errors.
class CliInputError : public std::runtime_error {
 public:
  explicit CliInputError(const std::string& what) : std::runtime_error(what) {}
};

//----------------------------------------------------------------------------
// Artifact assembly

// Collects one run artifact and flushes it in a single write, so identical
// invocations yield byte-identical files.  When an output path is set the
// artifact goes to the file and stdout carries only the verdict line.
class Artifact {
 public:
  Artifact(const std::string& command_echo) {
    body_ << "# zollgeo " << kToolVersion << "\n";
    body_ << "# command: " << command_echo << "\n";
  }

  void comment(const std::string& key, const std::string& value) {
    body_ << "# " << key << ": " << value << "\n";
  }
  void comment(const std::string& key, double value) {
    comment(key, format_float(value));
  }
  void fingerprint(std::uint64_t fp) {
    char buffer[20];
    std::snprintf(buffer, sizeof(buffer), "%016llx",
                  static_cast<unsigned long long>(fp));
    comment("fingerprint", buffer);
  }
  void line(const std::string& text) { body_ << text << "\n"; }

  // Appends the verdict line and writes the artifact.  Returns the exit code.
  int finish(bool pass, const std::string& out_path,
             const std::string& verdict_text = "") {
    const std::string verdict =
        "verdict: " + (verdict_text.empty()
                           ? std::string(pass ? "pass" : "fail")
                           : verdict_text);
    body_ << verdict << "\n";
    if (out_path.empty()) {
      std::cout << body_.str();
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw CliInputError("cannot open output file: " + out_path);
      out << body_.str();
      std::cout << verdict << "\n";
    }
    return pass ? 0 : 1;
  }

 private:
  std::ostringstream body_;
};

std::string echo_args(int argc, char** argv) {
  std::string echo = "zollgeo";
  for (int i = 1; i < argc; ++i) {
    echo += ' ';
    echo += argv[i];
  }
  return echo;
}

//----------------------------------------------------------------------------
// Grid parsing

// Parses "min:max:count" or "min:max:count:log|lin" into an explicit grid.
std::vector<double> parse_grid(const std::string& text, const char* what) {
  std::vector<std::string> parts;
  std::string piece;
  std::istringstream in(text);
  while (std::getline(in, piece, ':')) parts.push_back(piece);
  if (parts.size() != 3 && parts.size() != 4) {
    throw CliInputError(std::string(what) +
                        ": expected min:max:count[:log|lin], got \"" + text +
                        "\"");
  }
  double lo = 0.0, hi = 0.0;
  int count = 0;
  bool log_spaced = false;
  try {
    lo = std::stod(parts[0]);
    hi = std::stod(parts[1]);
    count = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw CliInputError(std::string(what) + ": malformed number in \"" + text +
                        "\"");
  }
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      log_spaced = true;
    } else if (parts[3] != "lin") {
      throw CliInputError(std::string(what) + ": spacing must be log or lin");
    }
  }
  if (count < 1) throw CliInputError(std::string(what) + ": count must be >= 1");
  if (log_spaced && (lo <= 0.0 || hi <= 0.0)) {
    throw CliInputError(std::string(what) + ": log spacing needs positive ends");
  }
  std::vector<double> grid;
  grid.reserve(count);
  if (count == 1) {
    grid.push_back(lo);
    return grid;
  }
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    grid.push_back(log_spaced ? lo * std::exp(t * std::log(hi / lo))
                              : lo + t * (hi - lo));
  }
  return grid;
}

std::string default_c_grid(const SurfaceSpec& spec) {
  return spec.family == Family::kHyperbolic ? "1.05:50:16:log"
                                            : "0.1:50:16:log";
}

//----------------------------------------------------------------------------
// Shared document plumbing

SpecDocument load_document(const std::string& path) { return load_spec(path); }

const SurfaceSpec& require_surface(const SpecDocument& doc, const char* cmd) {
  if (doc.is_blaschke || doc.is_boundary) {
    throw CliInputError(std::string(cmd) + ": expects a surface spec");
  }
  return doc.surface;
}

// Surfaces whose metric cannot be built (profile below the admissible bound,
// non-positive winding, ...) are input errors, not verdict failures.
void require_admissible(const ValidationReport& report, const char* cmd) {
  for (const Violation& v : report.violations) {
    if (v.category == ViolationClass::kAdmissibility) {
      std::ostringstream msg;
      msg << cmd << ": spec metric is not constructible (" << v.code;
      if (v.profile >= 0) msg << ", profile " << v.profile;
      msg << ")";
      throw CliInputError(msg.str());
    }
  }
}

// Boundary graphs: wave-form documents evaluate directly; an undeformed
// parabolic cover has the closed-form graphs.  Deformed surfaces need
// explicit boundary data.
BoundaryGraph boundary_from_document(const SpecDocument& doc) {
  if (doc.is_boundary) {
    auto make_theta = [](const BoundaryHalf& half) {
      return [half](double s) {
        double value = s + half.shift;
        for (const BoundaryWave& w : half.waves) {
          value += w.amplitude * std::sin(kSqrt2 * s + w.phase);
        }
        return value;
      };
    };
    return BoundaryGraph(make_theta(doc.theta_plus),
                         make_theta(doc.theta_minus));
  }
  if (doc.is_blaschke) {
    throw CliInputError("conformal: blend specs carry no boundary data");
  }
  const SurfaceSpec& spec = doc.surface;
  if (spec.family != Family::kParabolic) {
    throw CliInputError(
        "conformal: boundary graphs are available for parabolic covers only");
  }
  for (const KappaProfile& kappa : spec.kappas) {
    if (!kappa.is_zero()) {
      throw CliInputError(
          "conformal: boundary graphs of deformed surfaces need a boundary "
          "document (family \"boundary\")");
    }
  }
  if (spec.tau != 0.0) {
    throw CliInputError(
        "conformal: an undeformed cover needs tau = 0 for closed-form "
        "boundary graphs");
  }
  return BoundaryGraph::desitter(spec.k);
}

//----------------------------------------------------------------------------
// validate

int run_validate(const std::string& path, const std::string& out_path,
                 const std::string& echo) {
  const SpecDocument doc = load_document(path);
  Artifact art(echo);
  art.comment("spec", path);
  art.fingerprint(doc.fingerprint);

  std::vector<Violation> violations;
  if (doc.is_boundary) {
    throw CliInputError("validate: expects a surface or blend spec");
  } else if (doc.is_blaschke) {
    violations = validate_blaschke(doc.blaschke).violations;
  } else {
    violations = validate(doc.surface).violations;
  }

  art.line("code,class,profile,magnitude");
  for (const Violation& v : violations) {
    std::ostringstream row;
    row << v.code << ','
        << (v.category == ViolationClass::kAdmissibility ? "admissibility"
                                                         : "certificate")
        << ',' << v.profile << ',' << format_float(v.magnitude);
    art.line(row.str());
  }
  return art.finish(violations.empty(), out_path);
}

//----------------------------------------------------------------------------
// zoll-verify

int run_zoll_verify(const std::string& path, std::string c_grid_text,
                    double tol, bool tol_set, int nodes, bool nodes_set,
                    const std::string& method, std::string out_path,
                    const std::string& echo) {
  const SpecDocument doc = load_document(path);
  const SurfaceSpec& spec = require_surface(doc, "zoll-verify");
  require_admissible(validate(spec), "zoll-verify");

  if (c_grid_text.empty()) {
    c_grid_text = doc.c_grid.empty() ? default_c_grid(spec) : doc.c_grid;
  }
  if (!tol_set && doc.has_tol) tol = doc.tol;
  if (!nodes_set && doc.has_nodes) nodes = doc.nodes;
  if (out_path.empty()) out_path = doc.out;
  if (method != "quad" && method != "shoot" && method != "both") {
    throw CliInputError("zoll-verify: method must be quad, shoot or both");
  }
  const std::vector<double> c_grid = parse_grid(c_grid_text, "c-grid");
  const bool want_quad = method != "shoot";
  const bool want_shoot = method != "quad";
  // Hyperbolic loops through even chart i0 repeat with period 4 in i0, so
  // the two distinct families start at charts 0 and 2; the other families
  // have a single family, reported as branch 0.
  std::vector<int> branches{0};
  if (spec.family == Family::kHyperbolic) branches.push_back(2);

  Artifact art(echo);
  art.comment("spec", path);
  art.fingerprint(doc.fingerprint);
  art.comment("method", method);
  art.comment("c-grid", c_grid_text);
  art.comment("nodes", std::to_string(nodes));
  art.comment("tolerance", tol);

  std::string header = "c,branch";
  if (want_quad) header += ",residual";
  if (want_shoot) header += ",gap,length";
  if (want_quad && want_shoot) header += ",cross_check";
  header += ",pass";
  art.line(header);

  bool all_pass = true;
  for (double c : c_grid) {
    for (int branch : branches) {
      double residual = 0.0, gap = 0.0, length = 0.0, cross = 0.0;
      bool pass = true;
      if (want_quad) {
        residual = closure_residual(spec, c, branch, nodes);
        pass = pass && std::fabs(residual) <= tol;
      }
      if (want_shoot) {
        const ClosureReport report = shoot(spec, c, branch, nodes);
        gap = report.terminal_gap;
        length = report.total_length;
        pass = pass && gap <= tol;
      }
      if (want_quad && want_shoot) {
        // The shooting gap measures |residual| directly on the parabolic and
        // hyperbolic families; the elliptic loop crosses the deformation
        // band twice per period.
        const double expected = spec.family == Family::kElliptic
                                    ? 2.0 * std::fabs(residual)
                                    : std::fabs(residual);
        cross = std::fabs(gap - expected);
        pass = pass && cross <= tol;
      }
      all_pass = all_pass && pass;

      std::ostringstream row;
      row << format_float(c) << ',' << branch;
      if (want_quad) row << ',' << format_float(residual);
      if (want_shoot) {
        row << ',' << format_float(gap) << ',' << format_float(length);
      }
      if (want_quad && want_shoot) row << ',' << format_float(cross);
      row << ',' << (pass ? 1 : 0);
      art.line(row.str());
    }
  }
  return art.finish(all_pass, out_path);
}

//----------------------------------------------------------------------------
// scan

int run_scan_field(const SurfaceSpec& spec, const std::string& quantity,
                   const std::string& x_text, const std::string& y_text,
                   Artifact& art, const std::string& out_path) {
  const std::vector<double> xs = parse_grid(x_text, "x");
  const std::vector<double> ys = parse_grid(y_text, "y");
  art.line("chart,x,y,value");
  for (int chart = 0; chart < spec.chart_count(); ++chart) {
    for (double x : xs) {
      for (double y : ys) {
        const ChartPoint p{chart, x, y};
        const double value =
            quantity == "curvature" ? curvature_at(spec, p) : alpha(spec, p);
        std::ostringstream row;
        row << chart << ',' << format_float(x) << ',' << format_float(y)
            << ',' << format_float(value);
        art.line(row.str());
      }
    }
  }
  return art.finish(true, out_path);
}

int run_scan_geodesic(const SurfaceSpec& spec, double c, int chart, double tol,
                      Artifact& art, const std::string& out_path) {
  const OdeResult run = ode_closure(spec, c, chart);
  art.line("chart,x,y");
  for (const OdeSample& s : run.path) {
    std::ostringstream row;
    row << s.p.chart << ',' << format_float(s.p.x) << ','
        << format_float(s.p.y);
    art.line(row.str());
  }
  art.comment("gap", run.terminal_gap);
  art.comment("length", run.period);
  art.comment("tangencies", std::to_string(run.tangencies));
  art.comment("norm-drift", run.norm_drift);
  return art.finish(run.completed_loop && run.terminal_gap <= tol, out_path);
}

int run_scan_leaf(const SurfaceSpec& spec, int chart, double x0, double y0,
                  int foliation, double y_target, int samples, Artifact& art,
                  const std::string& out_path) {
  if (spec.family != Family::kParabolic) {
    throw CliInputError("scan: null-leaf traces need a parabolic surface");
  }
  const NullLeaf leaf =
      null_trace(spec, ChartPoint{chart, x0, y0}, foliation, y_target);
  art.line("chart,x,y,asymptote");
  int index = 0;
  for (const NullLeafSegment& seg : leaf.segments) {
    std::ostringstream meta;
    meta << "segment " << index++ << ": chart=" << seg.chart
         << " form=" << seg.form;
    if (seg.form == 0) {
      art.comment(meta.str(), "Killing orbit y=0");
      continue;
    }
    meta << " cst=" << format_float(seg.cst);
    art.comment(meta.str(), format_float(seg.asymptote));
    for (int i = 0; i <= samples; ++i) {
      const double y =
          seg.y_from + (seg.y_to - seg.y_from) * i / samples;
      std::ostringstream row;
      row << seg.chart << ',' << format_float(leaf_x(spec, seg, y)) << ','
          << format_float(y) << ',' << format_float(seg.asymptote);
      art.line(row.str());
    }
  }
  return art.finish(true, out_path);
}

int run_scan(const std::string& path, const std::string& quantity,
             const std::string& x_text, const std::string& y_text, double c,
             bool c_set, int chart, double x0, double y0, int foliation,
             double y_target, bool y_target_set, int samples, double tol,
             std::string out_path, const std::string& echo) {
  const SpecDocument doc = load_document(path);
  const SurfaceSpec& spec = require_surface(doc, "scan");
  require_admissible(validate(spec), "scan");
  if (out_path.empty()) out_path = doc.out;

  Artifact art(echo);
  art.comment("spec", path);
  art.fingerprint(doc.fingerprint);
  art.comment("quantity", quantity);

  if (quantity == "curvature" || quantity == "alpha") {
    return run_scan_field(spec, quantity, x_text, y_text, art, out_path);
  }
  if (quantity == "geodesic") {
    if (!c_set) c = spec.family == Family::kHyperbolic ? 1.5 : 1.0;
    art.comment("c", c);
    art.comment("tolerance", tol);
    return run_scan_geodesic(spec, c, chart, tol, art, out_path);
  }
  if (quantity == "null-leaf") {
    if (!y_target_set) y_target = -(spec.support_radius() + 2.0);
    return run_scan_leaf(spec, chart, x0, y0, foliation, y_target, samples,
                         art, out_path);
  }
  throw CliInputError(
      "scan: quantity must be curvature, alpha, geodesic or null-leaf");
}

//----------------------------------------------------------------------------
// conformal

int run_conformal_reflexion(const SpecDocument& doc,
                            const std::string& y_grid_text, double tol,
                            Artifact& art, const std::string& out_path) {
  const SurfaceSpec& spec = require_surface(doc, "conformal");
  if (spec.family != Family::kParabolic) {
    throw CliInputError("conformal: the reflexion map needs a parabolic surface");
  }
  require_admissible(validate(spec), "conformal");
  const ReflexionMap reflexion(spec);

  art.comment("delta0", reflexion.delta0());
  art.comment("delta1", reflexion.delta1());
  art.comment("tolerance", tol);
  art.line("y,pbar");
  const std::vector<double> ys = parse_grid(y_grid_text, "y-grid");
  for (auto it = ys.rbegin(); it != ys.rend(); ++it) {
    std::ostringstream row;
    row << format_float(-*it) << ',' << format_float(reflexion(-*it));
    art.line(row.str());
  }
  for (double y : ys) {
    std::ostringstream row;
    row << format_float(y) << ',' << format_float(reflexion(y));
    art.line(row.str());
  }

  const RegularityReport probe = regularity_probe(reflexion);
  art.comment("c1-match", probe.c1_match);
  art.comment("c2-jump", probe.second_derivative_jump);
  art.comment("predicted-jump", probe.predicted_jump);

  const bool c1_pass = probe.c1_match <= tol;
  std::ostringstream verdict;
  verdict << "C1: " << (c1_pass ? "pass" : "fail")
          << ", C2: jump=" << format_float(probe.second_derivative_jump);
  return art.finish(c1_pass, out_path, verdict.str());
}

int run_conformal_boundary(const SpecDocument& doc, int ppp_k, bool normalize,
                           double tol, Artifact& art,
                           const std::string& out_path) {
  const BoundaryGraph boundary = boundary_from_document(doc);
  const double residual = ppp_check(boundary, ppp_k);
  art.comment("ppp-order", std::to_string(ppp_k));
  art.comment("ppp-residual", residual);
  art.comment("tolerance", tol);

  if (!normalize) {
    return art.finish(residual <= tol, out_path);
  }

  // Normalization needs the ping-pong property to hold first.
  if (residual > 1e-8) {
    art.comment("normalization",
                "skipped: boundary fails the k-fold ping-pong property");
    return art.finish(false, out_path);
  }
  const NormalizedBoundary normal = normalize_boundary(boundary, ppp_k);
  art.line("s,psi,normalized_advance");
  const int kSamples = 33;
  for (int i = 0; i < kSamples; ++i) {
    const double s = kSqrt2 * kPi * i / kSamples;
    std::ostringstream row;
    row << format_float(s) << ',' << format_float(normal.psi(s)) << ','
        << format_float(normal.normalized_advance(s));
    art.line(row.str());
  }
  art.comment("conjugation-residual", normal.conjugation_residual);
  return art.finish(normal.conjugation_residual <= tol, out_path);
}

int run_conformal(const std::string& path, bool reflexion, int ppp_k,
                  bool ppp_set, bool normalize, const std::string& y_grid_text,
                  double tol, bool tol_set, std::string out_path,
                  const std::string& echo) {
  const SpecDocument doc = load_document(path);
  if (out_path.empty()) out_path = doc.out;
  if (reflexion == ppp_set) {
    throw CliInputError(
        "conformal: choose exactly one of --reflexion or --ppp <k>");
  }

  Artifact art(echo);
  art.comment("spec", path);
  art.fingerprint(doc.fingerprint);

  if (reflexion) {
    return run_conformal_reflexion(doc, y_grid_text, tol_set ? tol : 1e-6, art,
                                   out_path);
  }
  if (ppp_k < 1) throw CliInputError("conformal: --ppp order must be >= 1");
  return run_conformal_boundary(doc, ppp_k, normalize, tol_set ? tol : 1e-8,
                                art, out_path);
}

//----------------------------------------------------------------------------
// blaschke

int run_blaschke(const std::string& path, double tol, int nodes,
                 std::uint64_t seed, std::string out_path,
                 const std::string& echo) {
  const SpecDocument doc = load_document(path);
  if (!doc.is_blaschke) {
    throw CliInputError("blaschke: expects a blend spec (family \"blaschke\")");
  }
  if (out_path.empty()) out_path = doc.out;
  const BlaschkeSpec& blend = doc.blaschke;

  const ValidationReport report = validate_blaschke(blend);
  for (const Violation& v : report.violations) {
    if (v.code == "admissibility-lower-bound") {
      throw CliInputError("blaschke: spec metric is not constructible (" +
                          v.code + ")");
    }
  }

  Artifact art(echo);
  art.comment("spec", path);
  art.fingerprint(doc.fingerprint);
  art.comment("seed", std::to_string(seed));
  art.comment("tolerance", tol);

  // Region disjointness: the declared supports must stay inside their
  // Killing-adapted regions, and no sampled hyperboloid point may feel both
  // deformations.
  bool contained = true;
  for (const Violation& v : report.violations) {
    if (v.code == "support-containment") contained = false;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ua(-3.0, 3.0), uphi(0.0, 2.0 * kPi);
  const int kSamples = 10000;
  int overlap = 0;
  for (int i = 0; i < kSamples; ++i) {
    const double a = ua(rng), phi = uphi(rng);
    const double x = std::sinh(a);
    const double r = std::cosh(a);
    const double z = r * std::sin(phi);
    const bool active1 = blend.kappa1.value(x) != 0.0;
    const bool active2 = blend.kappa2.value(x + z) != 0.0;
    if (active1 && active2) ++overlap;
  }
  const bool disjoint = contained && overlap == 0;
  art.comment("support-containment", contained ? "pass" : "fail");
  art.comment("overlap-samples",
              std::to_string(overlap) + "/" + std::to_string(kSamples));
  art.comment("disjointness", disjoint ? "pass" : "fail");

  // Sub-residuals: each deformation alone is a Zoll deformation of its
  // adapted normal form (rotation-adapted over the first region,
  // null-rotation-adapted over the second).
  bool residuals_pass = true;
  art.line("check,c,residual,pass");
  {
    const SurfaceSpec sub1 =
        SurfaceSpec::elliptic(2.0 * kPi, 1, 1, blend.kappa1);
    const SurfaceSpec sub2 = SurfaceSpec::parabolic(1, 0.0, {blend.kappa2});
    for (double c : parse_grid("0.1:50:16:log", "c-grid")) {
      for (int which = 0; which < 2; ++which) {
        const double res = which == 0 ? closure_residual(sub1, c, 0, nodes)
                                      : closure_residual(sub2, c, 0, nodes);
        const bool pass = std::fabs(res) <= tol;
        residuals_pass = residuals_pass && pass;
        std::ostringstream row;
        row << (which == 0 ? "elliptic-v1" : "parabolic-v2") << ','
            << format_float(c) << ',' << format_float(res) << ','
            << (pass ? 1 : 0);
        art.line(row.str());
      }
    }
  }

  // Ambient closure gaps on the deterministic start ladder; the lower rungs
  // stay inside the first region's reach, the upper ones sweep through both.
  bool gaps_pass = true;
  art.line("start,s,gap,visits_v1,visits_v2,pass");
  std::vector<double> exps;
  for (int i = 0; i < 13; ++i) exps.push_back(1.5 + (3.9 - 1.5) * i / 12.0);
  for (int i = 0; i < 7; ++i) exps.push_back(4.2 + (4.9 - 4.2) * i / 6.0);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const double s = std::log(exps[i]);
    const AmbientPoint start{0.0, 1.0, 0.0};
    const std::array<double, 3> dir{std::sinh(s), 0.0, std::cosh(s)};
    const BlaschkeClosure closure = blaschke_geodesic(blend, start, dir);
    const bool pass = closure.min_gap <= tol;
    gaps_pass = gaps_pass && pass;
    std::ostringstream row;
    row << i << ',' << format_float(s) << ',' << format_float(closure.min_gap)
        << ',' << (closure.visited_v1 ? 1 : 0) << ','
        << (closure.visited_v2 ? 1 : 0) << ',' << (pass ? 1 : 0);
    art.line(row.str());
  }

  return art.finish(disjoint && residuals_pass && gaps_pass, out_path);
}

//----------------------------------------------------------------------------
// abel-check

int run_abel_check(int nodes, const std::string& out_path,
                   const std::string& echo) {
  Artifact art(echo);
  art.comment("nodes", std::to_string(nodes));
  art.line("identity,parameter,value,expected,error,tolerance,pass");
  bool all_pass = true;

  auto emit = [&](const char* identity, double parameter, double value,
                  double expected, double tol) {
    const double error = std::fabs(value - expected);
    const bool pass = error <= tol;
    all_pass = all_pass && pass;
    std::ostringstream row;
    row << identity << ',' << format_float(parameter) << ','
        << format_float(value) << ',' << format_float(expected) << ','
        << format_float(error) << ',' << format_float(tol) << ','
        << (pass ? 1 : 0);
    art.line(row.str());
  };

  // Gluing-defect identity: the singular band integral of
  // (c - sqrt(c^2-y^2)) / y^2 collapses to 2/c.
  for (double c : {0.5, 1.0, 2.0, 4.0}) {
    auto phi = [c](double y) {
      if (std::fabs(y) < 1e-4 * c) {
        return 1.0 / (2.0 * c) + y * y / (8.0 * c * c * c);
      }
      return (c - std::sqrt(c * c - y * y)) / (y * y);
    };
    const double value = chebyshev_singular(phi, c, nodes).value;
    emit("recollement", c, value, 2.0 / c, 1e-10);
  }

  // Band arc-length identity: sqrt(c^2+1) / (1+y^2) integrates to pi for
  // every band height.
  for (double c : {0.5, 2.0, 7.0}) {
    auto phi = [c](double y) { return std::sqrt(c * c + 1.0) / (1.0 + y * y); };
    const double value = chebyshev_singular(phi, c, nodes).value;
    emit("band-pi", c, value, kPi, 1e-10);
  }

  // Abel double-integral identity: I(a) = pi * integral_0^a h(s)/s^2 ds.
  // Odd integrands are annihilated by the band transform (next block), so
  // the identity is exercised on even profiles.
  {
    const std::vector<KappaProfile> profiles = {
        KappaProfile::terms({{{0.0, 0.0, 1.0}, -1.0, -0.5, 0.5, 1.0}}),
        KappaProfile::terms({{{0.0, 0.0, 0.4, 0.0, 0.1}, -1.5, -0.8, 0.8, 1.5}}),
        KappaProfile::terms({{{0.0, 0.0, -0.3, 0.0, 0.1}, -2.0, -1.0, 1.0, 2.0}}),
        KappaProfile::terms({{{0.0, 0.0, 0.0, 0.0, 1.0}, -1.2, -0.6, 0.6, 1.2}}),
        KappaProfile::spline({{-2.0, 0.0, 0.0, 0.0},
                              {-1.0, 0.3, -0.2, 0.1},
                              {0.0, 0.0, 0.0, 0.8},
                              {1.0, 0.3, 0.2, 0.1},
                              {2.0, 0.0, 0.0, 0.0}}),
    };
    const double a = 1.7;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      const KappaProfile& h = profiles[i];
      const double value =
          abel_I([&h](double s) { return h.value(s); }, a, nodes);
      const double expected = kPi * h.primitive_over_square(a);
      emit("abel-i", static_cast<double>(i), value, expected, 1e-7);
    }
  }

  // Odd integrands annihilate the band transform.
  {
    const KappaProfile odd = KappaProfile::odd_rational(0.7);
    double worst = 0.0;
    for (double c : {0.3, 0.7, 1.1, 2.0}) {
      worst = std::max(
          worst,
          std::fabs(abel_H([&odd](double s) { return odd.value(s); }, c, nodes)));
    }
    emit("abel-odd", 0.0, worst, 0.0, 1e-10);
  }

  // Hyperbolic Abel identity for the quadratic test profile.
  for (double a : {1.2, 2.0, 5.0}) {
    auto h = [](double s) { return s * s; };
    const double value = abel_J_hyperbolic(h, a, nodes);
    const double expected = abel_J_identity_rhs(h, a, nodes);
    emit("abel-j", a, value, expected, 1e-6);
  }

  return art.finish(all_pass, out_path);
}

//----------------------------------------------------------------------------

int dispatch(int argc, char** argv) {
  CLI::App app{"zollgeo: verification toolkit for spacelike surfaces all of "
               "whose spacelike geodesics close"};
  app.require_subcommand(1);
  const std::string echo = echo_args(argc, argv);

  std::string spec_path, out_path;
  std::string c_grid_text, method = "both";
  double tol = 1e-6;
  int nodes = 256;

  auto* cmd_validate =
      app.add_subcommand("validate", "Check a spec against every closure "
                                     "certificate and admissibility condition");
  cmd_validate->add_option("spec", spec_path, "spec document")->required();
  cmd_validate->add_option("--out", out_path, "artifact path");

  auto* cmd_verify = app.add_subcommand(
      "zoll-verify", "Measure geodesic closure residuals across a c-grid");
  cmd_verify->add_option("spec", spec_path, "spec document")->required();
  cmd_verify->add_option("--c-grid", c_grid_text,
                         "Clairaut grid min:max:count[:log|lin]");
  auto* verify_tol = cmd_verify->add_option("--tol", tol, "pass tolerance");
  auto* verify_nodes =
      cmd_verify->add_option("--nodes", nodes, "quadrature nodes");
  cmd_verify->add_option("--method", method, "quad, shoot or both");
  cmd_verify->add_option("--out", out_path, "artifact path");

  std::string quantity, x_text = "-3:3:30", y_text = "-3:3:30";
  double scan_c = 1.0, x0 = 0.0, y0 = 1.0, y_target = -4.0;
  int chart = 0, foliation = 2, samples = 64;
  auto* cmd_scan = app.add_subcommand(
      "scan", "Emit plot-ready samples of fields, geodesics or null leaves");
  cmd_scan->add_option("spec", spec_path, "spec document")->required();
  cmd_scan
      ->add_option("--quantity", quantity,
                   "curvature, alpha, geodesic or null-leaf")
      ->required();
  cmd_scan->add_option("--x", x_text, "x grid min:max:count");
  cmd_scan->add_option("--y", y_text, "y grid min:max:count");
  auto* scan_c_opt =
      cmd_scan->add_option("--c", scan_c, "Clairaut constant (geodesic)");
  cmd_scan->add_option("--chart", chart, "start chart");
  cmd_scan->add_option("--x0", x0, "leaf start x");
  cmd_scan->add_option("--y0", y0, "leaf start y");
  cmd_scan->add_option("--foliation", foliation, "leaf family (1 or 2)");
  auto* scan_target =
      cmd_scan->add_option("--y-target", y_target, "leaf trace end height");
  cmd_scan->add_option("--samples", samples, "samples per leaf segment");
  cmd_scan->add_option("--tol", tol, "closure tolerance (geodesic)");
  cmd_scan->add_option("--out", out_path, "artifact path");

  bool reflexion = false, normalize = false;
  int ppp_k = 0;
  std::string y_grid_text = "0.001:0.1:25:log";
  auto* cmd_conformal = app.add_subcommand(
      "conformal", "Reflexion-map regularity and conformal-boundary checks");
  cmd_conformal->add_option("spec", spec_path, "spec or boundary document")
      ->required();
  cmd_conformal->add_flag("--reflexion", reflexion,
                          "sample the reflexion map and probe regularity");
  auto* ppp_opt = cmd_conformal->add_option(
      "--ppp", ppp_k, "check the k-fold ping-pong property");
  cmd_conformal->add_flag("--normalize", normalize,
                          "conjugate the boundary advance to a translation");
  cmd_conformal->add_option("--y-grid", y_grid_text,
                            "reflexion sample grid min:max:count[:log|lin]");
  auto* conformal_tol =
      cmd_conformal->add_option("--tol", tol, "pass tolerance");
  cmd_conformal->add_option("--out", out_path, "artifact path");

  std::uint64_t seed = 20260815ULL;
  auto* cmd_blaschke = app.add_subcommand(
      "blaschke", "Region disjointness, sub-residuals and ambient closure "
                  "gaps of a blend spec");
  cmd_blaschke->add_option("spec", spec_path, "blend spec document")
      ->required();
  auto* blaschke_tol =
      cmd_blaschke->add_option("--tol", tol, "closure gap tolerance");
  cmd_blaschke->add_option("--nodes", nodes, "quadrature nodes");
  cmd_blaschke->add_option("--seed", seed, "disjointness sampling seed");
  cmd_blaschke->add_option("--out", out_path, "artifact path");

  auto* cmd_abel = app.add_subcommand(
      "abel-check", "Reproduce the singular-integral identities");
  auto* abel_nodes =
      cmd_abel->add_option("--nodes", nodes, "quadrature nodes");
  cmd_abel->add_option("--out", out_path, "artifact path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (cmd_validate->parsed()) {
    return run_validate(spec_path, out_path, echo);
  }
  if (cmd_verify->parsed()) {
    return run_zoll_verify(spec_path, c_grid_text, tol, !verify_tol->empty(),
                           nodes, !verify_nodes->empty(), method, out_path,
                           echo);
  }
  if (cmd_scan->parsed()) {
    return run_scan(spec_path, quantity, x_text, y_text, scan_c,
                    !scan_c_opt->empty(), chart, x0, y0, foliation, y_target,
                    !scan_target->empty(), samples, tol, out_path, echo);
  }
  if (cmd_conformal->parsed()) {
    return run_conformal(spec_path, reflexion, ppp_k, !ppp_opt->empty(),
                         normalize, y_grid_text, tol, !conformal_tol->empty(),
                         out_path, echo);
  }
  if (cmd_blaschke->parsed()) {
    if (blaschke_tol->empty()) tol = 1e-5;
    return run_blaschke(spec_path, tol, nodes, seed, out_path, echo);
  }
  if (cmd_abel->parsed()) {
    if (abel_nodes->empty()) nodes = 1 << 17;
    return run_abel_check(nodes, out_path, echo);
  }
  return 2;
}

}  // namespace
}  // namespace zoll

int main(int argc, char** argv) {
  try {
    return zoll::dispatch(argc, argv);
  } catch (const zoll::SpecParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const zoll::CliInputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
