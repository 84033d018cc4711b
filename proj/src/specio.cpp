// zollgeo: spec-document ingestion (implementation).

#include "zoll/specio.hpp"

// C++ headers
#include <cstdio>     // snprintf
#include <fstream>    // ifstream
#include <sstream>    // ostringstream
#include <vector>     // vector

// vendor headers
#include "json.hpp"  // nlohmann::json

namespace zoll {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& context, const std::string& what) {
  std::ostringstream msg;
  msg << context << ": " << what;
  throw SpecParseError(msg.str());
}

// Strictness gate: every object must consist of exactly the known keys
// (optional ones included); anything else is a spelling mistake we refuse to
// guess about.
void require_keys(const json& obj, const std::string& context,
                  const std::vector<std::string>& required,
                  const std::vector<std::string>& optional) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const std::string& key : required) known = known || key == item.key();
    for (const std::string& key : optional) known = known || key == item.key();
    if (!known) fail(context, "unknown key \"" + item.key() + "\"");
  }
  for (const std::string& key : required) {
    if (!obj.contains(key)) fail(context, "missing key \"" + key + "\"");
  }
}

double as_number(const json& v, const std::string& context) {
  if (!v.is_number()) fail(context, "expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& context) {
  if (!v.is_number_integer()) fail(context, "expected an integer");
  return v.get<int>();
}

KappaProfile parse_profile(const json& p, const std::string& context) {
  if (!p.is_object()) fail(context, "profile descriptor must be an object");
  if (!p.contains("type") || !p["type"].is_string()) {
    fail(context, "profile descriptor needs a string \"type\"");
  }
  const std::string type = p["type"].get<std::string>();

  if (type == "zero") {
    require_keys(p, context, {"type"}, {});
    return KappaProfile::zero();
  }

  if (type == "odd-rational") {
    require_keys(p, context, {"type", "amplitude"}, {});
    return KappaProfile::odd_rational(
        as_number(p["amplitude"], context + ".amplitude"));
  }

  if (type == "terms") {
    require_keys(p, context, {"type", "terms"}, {});
    if (!p["terms"].is_array() || p["terms"].empty()) {
      fail(context, "\"terms\" must be a non-empty array");
    }
    std::vector<ProfileTerm> terms;
    int index = 0;
    for (const json& t : p["terms"]) {
      std::ostringstream sub;
      sub << context << ".terms[" << index++ << "]";
      require_keys(t, sub.str(), {"poly", "window"}, {});
      if (!t["poly"].is_array() || t["poly"].empty()) {
        fail(sub.str(), "\"poly\" must be a non-empty coefficient array");
      }
      if (!t["window"].is_array() || t["window"].size() != 4) {
        fail(sub.str(), "\"window\" must be [l0, l1, r1, r0]");
      }
      ProfileTerm term;
      for (const json& coeff : t["poly"]) {
        term.poly.push_back(as_number(coeff, sub.str() + ".poly"));
      }
      term.l0 = as_number(t["window"][0], sub.str() + ".window");
      term.l1 = as_number(t["window"][1], sub.str() + ".window");
      term.r1 = as_number(t["window"][2], sub.str() + ".window");
      term.r0 = as_number(t["window"][3], sub.str() + ".window");
      terms.push_back(std::move(term));
    }
    return KappaProfile::terms(std::move(terms));
  }

  if (type == "spline") {
    require_keys(p, context, {"type", "knots"}, {});
    if (!p["knots"].is_array() || p["knots"].size() < 2) {
      fail(context, "\"knots\" must be an array of at least two knots");
    }
    std::vector<SplineKnot> knots;
    int index = 0;
    for (const json& k : p["knots"]) {
      std::ostringstream sub;
      sub << context << ".knots[" << index++ << "]";
      require_keys(k, sub.str(), {"t", "value", "d1", "d2"}, {});
      SplineKnot knot;
      knot.t = as_number(k["t"], sub.str() + ".t");
      knot.value = as_number(k["value"], sub.str() + ".value");
      knot.d1 = as_number(k["d1"], sub.str() + ".d1");
      knot.d2 = as_number(k["d2"], sub.str() + ".d2");
      knots.push_back(knot);
    }
    return KappaProfile::spline(std::move(knots));
  }

  fail(context, "unknown profile type \"" + type + "\"");
}

std::vector<KappaProfile> parse_profiles(const json& doc) {
  if (!doc["kappas"].is_array() || doc["kappas"].empty()) {
    fail("spec", "\"kappas\" must be a non-empty array");
  }
  std::vector<KappaProfile> kappas;
  int index = 0;
  for (const json& p : doc["kappas"]) {
    std::ostringstream sub;
    sub << "kappas[" << index++ << "]";
    kappas.push_back(parse_profile(p, sub.str()));
  }
  return kappas;
}

BoundaryHalf parse_boundary_half(const json& h, const std::string& context) {
  if (!h.is_object()) fail(context, "boundary half must be an object");
  require_keys(h, context, {"shift"}, {"waves"});
  BoundaryHalf half;
  half.shift = as_number(h["shift"], context + ".shift");
  if (h.contains("waves")) {
    if (!h["waves"].is_array()) fail(context, "\"waves\" must be an array");
    int index = 0;
    for (const json& w : h["waves"]) {
      std::ostringstream sub;
      sub << context << ".waves[" << index++ << "]";
      require_keys(w, sub.str(), {"amplitude"}, {"phase"});
      BoundaryWave wave;
      wave.amplitude = as_number(w["amplitude"], sub.str() + ".amplitude");
      if (w.contains("phase")) {
        wave.phase = as_number(w["phase"], sub.str() + ".phase");
      }
      half.waves.push_back(wave);
    }
  }
  return half;
}

void parse_scan_block(const json& doc, SpecDocument& out) {
  if (!doc.contains("scan")) return;
  const json& scan = doc["scan"];
  if (!scan.is_object()) fail("scan", "must be an object");
  require_keys(scan, "scan", {}, {"c-grid", "tol", "nodes", "out"});
  if (scan.contains("c-grid")) {
    if (!scan["c-grid"].is_string()) fail("scan.c-grid", "expected a string");
    out.c_grid = scan["c-grid"].get<std::string>();
  }
  if (scan.contains("tol")) {
    out.tol = as_number(scan["tol"], "scan.tol");
    out.has_tol = true;
  }
  if (scan.contains("nodes")) {
    out.nodes = as_int(scan["nodes"], "scan.nodes");
    out.has_nodes = true;
  }
  if (scan.contains("out")) {
    if (!scan["out"].is_string()) fail("scan.out", "expected a string");
    out.out = scan["out"].get<std::string>();
  }
}

}  // namespace

//----------------------------------------------------------------------------

SpecDocument parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecParseError(e.what());  // carries byte/line position
  }
  if (!doc.is_object()) throw SpecParseError("top level must be an object");
  if (!doc.contains("family") || !doc["family"].is_string()) {
    throw SpecParseError("spec needs a string \"family\" discriminator");
  }
  const std::string family = doc["family"].get<std::string>();

  SpecDocument out;
  out.fingerprint = fnv1a64(text);

  try {
    if (family == "parabolic") {
      require_keys(doc, "spec", {"family", "k", "kappas"}, {"tau", "scan"});
      const int k = as_int(doc["k"], "k");
      const double tau =
          doc.contains("tau") ? as_number(doc["tau"], "tau") : 0.0;
      out.surface = SurfaceSpec::parabolic(k, tau, parse_profiles(doc));
    } else if (family == "elliptic") {
      require_keys(doc, "spec", {"family", "tau", "kappas"},
                   {"p", "q", "scan"});
      const double tau = as_number(doc["tau"], "tau");
      const int p = doc.contains("p") ? as_int(doc["p"], "p") : 1;
      const int q = doc.contains("q") ? as_int(doc["q"], "q") : 1;
      std::vector<KappaProfile> kappas = parse_profiles(doc);
      if (kappas.size() != 1) {
        fail("spec", "elliptic surfaces take exactly one profile");
      }
      out.surface = SurfaceSpec::elliptic(tau, p, q, std::move(kappas[0]));
    } else if (family == "hyperbolic") {
      require_keys(doc, "spec", {"family", "k", "kappas"}, {"tau", "scan"});
      const int k = as_int(doc["k"], "k");
      const double tau =
          doc.contains("tau") ? as_number(doc["tau"], "tau") : 0.0;
      out.surface = SurfaceSpec::hyperbolic(k, tau, parse_profiles(doc));
    } else if (family == "blaschke") {
      require_keys(doc, "spec", {"family", "kappa1", "kappa2"}, {"scan"});
      out.is_blaschke = true;
      out.blaschke.kappa1 = parse_profile(doc["kappa1"], "kappa1");
      out.blaschke.kappa2 = parse_profile(doc["kappa2"], "kappa2");
    } else if (family == "boundary") {
      require_keys(doc, "spec", {"family", "theta-plus", "theta-minus"},
                   {"scan"});
      out.is_boundary = true;
      out.theta_plus = parse_boundary_half(doc["theta-plus"], "theta-plus");
      out.theta_minus = parse_boundary_half(doc["theta-minus"], "theta-minus");
    } else {
      fail("spec", "unknown family \"" + family + "\"");
    }
  } catch (const SpecParseError&) {
    throw;
  } catch (const std::exception& e) {
    // Factory/profile constraint failures are input errors here.
    throw SpecParseError(e.what());
  }

  parse_scan_block(doc, out);
  return out;
}

SpecDocument load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecParseError("cannot open spec file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_spec(buffer.str());
  } catch (const SpecParseError& e) {
    throw SpecParseError(path + ": " + e.what());
  }
}

//----------------------------------------------------------------------------

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    hash ^= static_cast<std::uint64_t>(b);
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string format_float(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace zoll
