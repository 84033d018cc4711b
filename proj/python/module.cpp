// zollgeo: Python bindings — the spec/profile value types, the chart atlas,
// validation, quadrature and Abel identities, geodesic closure engines, and
// the conformal layer, mirrored one-to-one onto the C++ API.

// pybind11 headers
#include <pybind11/functional.h>  // std::function <-> callable
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>         // vector/array/pair fields

// zollgeo headers
#include "zoll/atlas.hpp"
#include "zoll/conformal.hpp"
#include "zoll/geodesics.hpp"
#include "zoll/quad.hpp"
#include "zoll/specio.hpp"
#include "zoll/validate.hpp"
#include "zoll/version.hpp"

namespace py = pybind11;
using namespace zoll;

namespace {

void bind_profiles(py::module_& m) {
  py::class_<ProfileTerm>(m, "ProfileTerm",
                          "One additive profile term: polynomial times "
                          "plateau window W(t; l0,l1,r1,r0).")
      .def(py::init([](std::vector<double> poly, double l0, double l1,
                       double r1, double r0) {
             return ProfileTerm{std::move(poly), l0, l1, r1, r0};
           }),
           py::arg("poly"), py::arg("l0"), py::arg("l1"), py::arg("r1"),
           py::arg("r0"))
      .def_readwrite("poly", &ProfileTerm::poly)
      .def_readwrite("l0", &ProfileTerm::l0)
      .def_readwrite("l1", &ProfileTerm::l1)
      .def_readwrite("r1", &ProfileTerm::r1)
      .def_readwrite("r0", &ProfileTerm::r0);

  py::class_<SplineKnot>(m, "SplineKnot",
                         "Quintic-spline knot: value and first two "
                         "derivatives at t.")
      .def(py::init([](double t, double value, double d1, double d2) {
             return SplineKnot{t, value, d1, d2};
           }),
           py::arg("t"), py::arg("value"), py::arg("d1"), py::arg("d2"))
      .def_readwrite("t", &SplineKnot::t)
      .def_readwrite("value", &SplineKnot::value)
      .def_readwrite("d1", &SplineKnot::d1)
      .def_readwrite("d2", &SplineKnot::d2);

  py::class_<KappaProfile>(m, "KappaProfile",
                           "Smooth deformation profile kappa(t); immutable.")
      .def_static("zero", &KappaProfile::zero)
      .def_static("odd_rational", &KappaProfile::odd_rational,
                  py::arg("amplitude"))
      .def_static("terms", &KappaProfile::terms, py::arg("terms"))
      .def_static("spline", &KappaProfile::spline, py::arg("knots"))
      .def("value", &KappaProfile::value, py::arg("t"))
      .def("derivative", &KappaProfile::derivative, py::arg("t"),
           py::arg("order"))
      .def("primitive_over_square", &KappaProfile::primitive_over_square,
           py::arg("t"))
      .def("limit_at_minus_infinity", &KappaProfile::limit_at_minus_infinity)
      .def("breakpoints", &KappaProfile::breakpoints,
           py::return_value_policy::copy)
      .def("support_radius", &KappaProfile::support_radius)
      .def("is_zero", &KappaProfile::is_zero);
}

void bind_spec(py::module_& m) {
  py::enum_<Family>(m, "Family")
      .value("parabolic", Family::kParabolic)
      .value("elliptic", Family::kElliptic)
      .value("hyperbolic", Family::kHyperbolic);

  py::class_<ChartPoint>(m, "ChartPoint")
      .def(py::init([](int chart, double x, double y) {
             return ChartPoint{chart, x, y};
           }),
           py::arg("chart"), py::arg("x"), py::arg("y"))
      .def_readwrite("chart", &ChartPoint::chart)
      .def_readwrite("x", &ChartPoint::x)
      .def_readwrite("y", &ChartPoint::y)
      .def("__repr__", [](const ChartPoint& p) {
        return "ChartPoint(chart=" + std::to_string(p.chart) +
               ", x=" + format_float(p.x) + ", y=" + format_float(p.y) + ")";
      });

  py::class_<MetricCoeffs>(m, "MetricCoeffs",
                           "Coefficients of h dx^2 + 2 m dx dy + f dy^2.")
      .def_readonly("h", &MetricCoeffs::h)
      .def_readonly("m", &MetricCoeffs::m)
      .def_readonly("f", &MetricCoeffs::f);

  py::class_<TangentVector>(m, "TangentVector")
      .def(py::init([](const ChartPoint& base, double dx, double dy) {
             return TangentVector{base, dx, dy};
           }),
           py::arg("base"), py::arg("dx"), py::arg("dy"))
      .def_readwrite("base", &TangentVector::base)
      .def_readwrite("dx", &TangentVector::dx)
      .def_readwrite("dy", &TangentVector::dy);

  py::class_<SurfaceSpec>(m, "SurfaceSpec",
                          "One surface: family normal form, atlas size k, "
                          "gluing translation tau, winding pair (p,q), and "
                          "deformation profiles.")
      .def_static("parabolic", &SurfaceSpec::parabolic, py::arg("k"),
                  py::arg("tau"), py::arg("kappas"))
      .def_static("elliptic", &SurfaceSpec::elliptic, py::arg("tau"),
                  py::arg("p"), py::arg("q"), py::arg("kappa"))
      .def_static("hyperbolic", &SurfaceSpec::hyperbolic, py::arg("k"),
                  py::arg("tau"), py::arg("kappas"))
      .def_readonly("family", &SurfaceSpec::family)
      .def_readonly("k", &SurfaceSpec::k)
      .def_readonly("tau", &SurfaceSpec::tau)
      .def_readonly("p", &SurfaceSpec::p)
      .def_readonly("q", &SurfaceSpec::q)
      .def_readonly("kappas", &SurfaceSpec::kappas)
      .def("chart_count", &SurfaceSpec::chart_count)
      .def("shift", &SurfaceSpec::shift)
      .def("support_radius", &SurfaceSpec::support_radius);

  py::class_<BlaschkeSpec>(m, "BlaschkeSpec",
                           "The blend: an elliptic deformation kappa1 and a "
                           "parabolic one kappa2 on disjoint regions.")
      .def(py::init([](KappaProfile kappa1, KappaProfile kappa2) {
             return BlaschkeSpec{std::move(kappa1), std::move(kappa2)};
           }),
           py::arg("kappa1"), py::arg("kappa2"))
      .def_readwrite("kappa1", &BlaschkeSpec::kappa1)
      .def_readwrite("kappa2", &BlaschkeSpec::kappa2);
}

void bind_atlas(py::module_& m) {
  m.def("profile_index", &profile_index, py::arg("spec"), py::arg("chart"),
        py::arg("y"),
        "Index of the profile entering f on `chart` at height y.");
  m.def("transition",
        py::overload_cast<const SurfaceSpec&, int, int, const ChartPoint&>(
            &transition),
        py::arg("spec"), py::arg("from_chart"), py::arg("to_chart"),
        py::arg("p"), "Chart change applied to a point.");
  m.def("transition_vector",
        py::overload_cast<const SurfaceSpec&, int, int, const TangentVector&>(
            &transition),
        py::arg("spec"), py::arg("from_chart"), py::arg("to_chart"),
        py::arg("v"), "Chart change applied to a tangent vector.");
  m.def("metric_at", &metric_at, py::arg("spec"), py::arg("p"));
  m.def("alpha", &alpha, py::arg("spec"), py::arg("p"),
        "g(K,K) for the Killing field K = d/dx.");
  m.def("curvature_at", &curvature_at, py::arg("spec"), py::arg("p"));
  m.def("lightlike_directions", &lightlike_directions, py::arg("spec"),
        py::arg("p"));
  m.def("filled_metric_at", &filled_metric_at, py::arg("spec"), py::arg("u"),
        py::arg("v"), "Hole-filling chart metric of a hyperbolic surface.");
  m.def("mobius_involution", &mobius_involution, py::arg("spec"),
        py::arg("p"),
        "The fixed-point-free isometric involution of the Moebius quotients.");

  py::class_<AmbientPoint>(m, "AmbientPoint",
                           "Point of the hyperboloid -x^2 + y^2 + z^2 = 1.")
      .def(py::init([](double x, double y, double z) {
             return AmbientPoint{x, y, z};
           }),
           py::arg("x"), py::arg("y"), py::arg("z"))
      .def_readwrite("x", &AmbientPoint::x)
      .def_readwrite("y", &AmbientPoint::y)
      .def_readwrite("z", &AmbientPoint::z);

  py::enum_<BlaschkeRegion>(m, "BlaschkeRegion")
      .value("v1", BlaschkeRegion::kV1)
      .value("v2", BlaschkeRegion::kV2)
      .value("outside", BlaschkeRegion::kOutside);

  m.def("blaschke_region", &blaschke_region, py::arg("p"));
  m.def("blaschke_metric_ambient", &blaschke_metric_ambient, py::arg("spec"),
        py::arg("p"), "Blended metric as a 3x3 ambient coefficient matrix.");
}

void bind_validate(py::module_& m) {
  py::enum_<ViolationClass>(m, "ViolationClass")
      .value("admissibility", ViolationClass::kAdmissibility)
      .value("certificate", ViolationClass::kCertificate);

  py::class_<Violation>(m, "Violation")
      .def_readonly("code", &Violation::code)
      .def_readonly("category", &Violation::category)
      .def_readonly("profile", &Violation::profile)
      .def_readonly("magnitude", &Violation::magnitude)
      .def_readonly("detail", &Violation::detail)
      .def("__repr__", [](const Violation& v) {
        return "Violation(" + v.code + ", profile=" +
               std::to_string(v.profile) + ", magnitude=" +
               format_float(v.magnitude) + ")";
      });

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("violations", &ValidationReport::violations)
      .def("admissible", &ValidationReport::admissible)
      .def("zoll_certified", &ValidationReport::zoll_certified);

  m.def("validate", &validate, py::arg("spec"),
        "Check every invariant of the family spec; reports all failures.");
  m.def("validate_blaschke", &validate_blaschke, py::arg("spec"));
}

void bind_specio(py::module_& m) {
  py::class_<BoundaryWave>(m, "BoundaryWave")
      .def(py::init([](double amplitude, double phase) {
             return BoundaryWave{amplitude, phase};
           }),
           py::arg("amplitude"), py::arg("phase") = 0.0)
      .def_readwrite("amplitude", &BoundaryWave::amplitude)
      .def_readwrite("phase", &BoundaryWave::phase);

  py::class_<BoundaryHalf>(m, "BoundaryHalf",
                           "theta(s) = s + shift + sum of "
                           "amplitude*sin(sqrt(2)*s + phase).")
      .def(py::init([](double shift, std::vector<BoundaryWave> waves) {
             return BoundaryHalf{shift, std::move(waves)};
           }),
           py::arg("shift"), py::arg("waves") = std::vector<BoundaryWave>{})
      .def_readwrite("shift", &BoundaryHalf::shift)
      .def_readwrite("waves", &BoundaryHalf::waves);

  py::class_<SpecDocument>(m, "SpecDocument")
      .def_readonly("is_blaschke", &SpecDocument::is_blaschke)
      .def_readonly("is_boundary", &SpecDocument::is_boundary)
      .def_readonly("surface", &SpecDocument::surface)
      .def_readonly("blaschke", &SpecDocument::blaschke)
      .def_readonly("theta_plus", &SpecDocument::theta_plus)
      .def_readonly("theta_minus", &SpecDocument::theta_minus)
      .def_readonly("c_grid", &SpecDocument::c_grid)
      .def_readonly("tol", &SpecDocument::tol)
      .def_readonly("has_tol", &SpecDocument::has_tol)
      .def_readonly("nodes", &SpecDocument::nodes)
      .def_readonly("has_nodes", &SpecDocument::has_nodes)
      .def_readonly("out", &SpecDocument::out)
      .def_readonly("fingerprint", &SpecDocument::fingerprint);

  m.def("parse_spec", &parse_spec, py::arg("text"),
        "Parse a JSON spec document; unknown keys are rejected.");
  m.def("load_spec", &load_spec, py::arg("path"));
  m.def("format_float", &format_float, py::arg("value"),
        "Shortest round-trippable decimal form (17 significant digits).");

  py::register_exception<SpecParseError>(m, "SpecParseError");
}

void bind_quad(py::module_& m) {
  py::class_<QuadratureResult>(m, "QuadratureResult")
      .def_readonly("value", &QuadratureResult::value)
      .def_readonly("error_estimate", &QuadratureResult::error_estimate);

  m.def("chebyshev_singular", &chebyshev_singular, py::arg("phi"),
        py::arg("c"), py::arg("nodes") = 256,
        "integral_-c^c phi(y)/sqrt(c^2-y^2) dy.");
  m.def("weighted_band_integral", &weighted_band_integral, py::arg("phi"),
        py::arg("c"), py::arg("radius"), py::arg("nodes") = 256);
  m.def("closure_residual", &closure_residual, py::arg("spec"), py::arg("c"),
        py::arg("i0") = 0, py::arg("nodes") = 256,
        "Geodesic closure residual at Clairaut constant c (i0 selects the "
        "hyperbolic loop family).");
  m.def("abel_H", &abel_H, py::arg("h"), py::arg("c"), py::arg("nodes") = 256);
  m.def("abel_I", &abel_I, py::arg("h"), py::arg("a"), py::arg("nodes") = 256);
  m.def("abel_J_hyperbolic", &abel_J_hyperbolic, py::arg("h"), py::arg("a"),
        py::arg("nodes") = 256);
  m.def("abel_J_identity_rhs", &abel_J_identity_rhs, py::arg("h"),
        py::arg("a"), py::arg("nodes") = 256);
}

void bind_geodesics(py::module_& m) {
  py::class_<GeodesicArc>(m, "GeodesicArc")
      .def_readonly("chart", &GeodesicArc::chart)
      .def_readonly("c", &GeodesicArc::c)
      .def_readonly("eps", &GeodesicArc::eps)
      .def_readonly("eps1", &GeodesicArc::eps1)
      .def_readonly("y_from", &GeodesicArc::y_from)
      .def_readonly("y_to", &GeodesicArc::y_to)
      .def_readonly("x_shift", &GeodesicArc::x_shift)
      .def_readonly("length", &GeodesicArc::length);

  py::class_<ClosureReport>(m, "ClosureReport")
      .def_readonly("arcs", &ClosureReport::arcs)
      .def_readonly("terminal_gap", &ClosureReport::terminal_gap)
      .def_readonly("total_length", &ClosureReport::total_length)
      .def_readonly("closed", &ClosureReport::closed);

  m.def("shoot", &shoot, py::arg("spec"), py::arg("c"),
        py::arg("start_chart") = 0, py::arg("nodes") = 256,
        py::arg("tol") = 1e-6,
        "Shoot one geodesic loop through the atlas by band sweeps.");
  m.def("arc_length", &arc_length, py::arg("spec"), py::arg("chart"),
        py::arg("c"), py::arg("nodes") = 256);

  py::class_<OdeOptions>(m, "OdeOptions")
      .def(py::init<>())
      .def_readwrite("rel_tol", &OdeOptions::rel_tol)
      .def_readwrite("abs_tol", &OdeOptions::abs_tol)
      .def_readwrite("h_max", &OdeOptions::h_max)
      .def_readwrite("tangency_target", &OdeOptions::tangency_target)
      .def_readwrite("drift_abort", &OdeOptions::drift_abort);

  py::class_<OdeSample>(m, "OdeSample")
      .def_readonly("t", &OdeSample::t)
      .def_readonly("p", &OdeSample::p)
      .def_readonly("dx", &OdeSample::dx)
      .def_readonly("dy", &OdeSample::dy);

  py::class_<OdeResult>(m, "OdeResult")
      .def_readonly("path", &OdeResult::path)
      .def_readonly("tangencies", &OdeResult::tangencies)
      .def_readonly("norm_drift", &OdeResult::norm_drift)
      .def_readonly("clairaut_drift", &OdeResult::clairaut_drift)
      .def_readonly("completed_loop", &OdeResult::completed_loop)
      .def_readonly("terminal_gap", &OdeResult::terminal_gap)
      .def_readonly("period", &OdeResult::period);

  m.def("ode_integrate", &ode_integrate, py::arg("spec"), py::arg("start"),
        py::arg("t_max"), py::arg("opts") = OdeOptions{},
        "Integrate the geodesic equations with tangency chart hand-offs.");
  m.def("ode_closure", &ode_closure, py::arg("spec"), py::arg("c"),
        py::arg("start_chart") = 0, py::arg("opts") = OdeOptions{});

  py::class_<TransverseClosure>(m, "TransverseClosure")
      .def_readonly("closed", &TransverseClosure::closed)
      .def_readonly("gap", &TransverseClosure::gap);

  m.def("perpendicular_closure_probe", &perpendicular_closure_probe,
        py::arg("spec"),
        "Killing-orthogonal geodesic through the hole-filling chart.");
  m.def("perpendicular_closure_hyperbolic", &perpendicular_closure_hyperbolic,
        py::arg("spec"));

  py::class_<BlaschkeClosure>(m, "BlaschkeClosure")
      .def_readonly("min_gap", &BlaschkeClosure::min_gap)
      .def_readonly("t_at_min", &BlaschkeClosure::t_at_min)
      .def_readonly("max_drift", &BlaschkeClosure::max_drift)
      .def_readonly("visited_v1", &BlaschkeClosure::visited_v1)
      .def_readonly("visited_v2", &BlaschkeClosure::visited_v2);

  m.def("blaschke_geodesic", &blaschke_geodesic, py::arg("spec"),
        py::arg("start"), py::arg("dir"), py::arg("t_max") = 7.5,
        "Constrained geodesic of the blended metric on the hyperboloid.");
}

void bind_conformal(py::module_& m) {
  py::class_<NullLeafSegment>(m, "NullLeafSegment")
      .def_readonly("chart", &NullLeafSegment::chart)
      .def_readonly("form", &NullLeafSegment::form)
      .def_readonly("cst", &NullLeafSegment::cst)
      .def_readonly("y_from", &NullLeafSegment::y_from)
      .def_readonly("y_to", &NullLeafSegment::y_to)
      .def_readonly("asymptote", &NullLeafSegment::asymptote);

  py::class_<NullLeaf>(m, "NullLeaf")
      .def_readonly("segments", &NullLeaf::segments);

  m.def("null_trace", &null_trace, py::arg("spec"), py::arg("p"),
        py::arg("foliation"), py::arg("y_target"),
        "Trace the lightlike leaf through p toward y_target.");
  m.def("leaf_asymptote", &leaf_asymptote, py::arg("spec"), py::arg("p"),
        py::arg("foliation"));
  m.def("leaf_x", &leaf_x, py::arg("spec"), py::arg("segment"), py::arg("y"));

  py::class_<ReflexionMap>(m, "ReflexionMap",
                           "Composition sending a leaf of one null foliation "
                           "to the leaf of the other sharing its asymptote.")
      .def(py::init<const SurfaceSpec&>(), py::arg("spec"))
      .def("__call__", &ReflexionMap::operator(), py::arg("y"))
      .def("delta0", &ReflexionMap::delta0)
      .def("delta1", &ReflexionMap::delta1);

  m.def("reflexion_P", &reflexion_P, py::arg("spec"), py::arg("y"));

  py::class_<RegularityReport>(m, "RegularityReport")
      .def_readonly("c1_match", &RegularityReport::c1_match)
      .def_readonly("second_derivative_jump",
                    &RegularityReport::second_derivative_jump)
      .def_readonly("predicted_jump", &RegularityReport::predicted_jump);

  m.def("regularity_probe", &regularity_probe, py::arg("pbar"),
        "One-sided derivative data of the reflexion map at 0.");

  py::class_<BoundaryGraph>(m, "BoundaryGraph",
                            "Conformal boundary as two increasing maps "
                            "commuting with translation by sqrt(2)*pi.")
      .def(py::init<std::function<double(double)>,
                    std::function<double(double)>>(),
           py::arg("theta_plus"), py::arg("theta_minus"))
      .def_static("desitter", &BoundaryGraph::desitter, py::arg("k") = 1)
      .def("theta_plus", &BoundaryGraph::theta_plus, py::arg("x"))
      .def("theta_minus", &BoundaryGraph::theta_minus, py::arg("x"))
      .def("theta_minus_inverse", &BoundaryGraph::theta_minus_inverse,
           py::arg("target"))
      .def("advance", &BoundaryGraph::advance, py::arg("x"));

  m.def("ppp_check", &ppp_check, py::arg("b"), py::arg("k"),
        "sup |T^k(x) - x - sqrt(2) pi| over one period.");

  py::class_<NormalizedBoundary>(m, "NormalizedBoundary")
      .def_readonly("psi", &NormalizedBoundary::psi)
      .def_readonly("normalized_advance",
                    &NormalizedBoundary::normalized_advance)
      .def_readonly("conjugation_residual",
                    &NormalizedBoundary::conjugation_residual);

  m.def("normalize_boundary", &normalize_boundary, py::arg("b"), py::arg("k"),
        "Conjugate the ping-pong advance to the translation by "
        "sqrt(2) pi / k.");
  m.def("desitter_conformal_profile", &desitter_conformal_profile,
        py::arg("t"));
  m.def("desitter_conformal_height", &desitter_conformal_height);
}

}  // namespace

PYBIND11_MODULE(_zollgeo, m) {
  m.doc() = "Verification toolkit for spacelike surfaces all of whose "
            "spacelike geodesics close.";
  m.attr("__version__") = kToolVersion;
  bind_profiles(m);
  bind_spec(m);
  bind_atlas(m);
  bind_validate(m);
  bind_specio(m);
  bind_quad(m);
  bind_geodesics(m);
  bind_conformal(m);
}
