// zollgeo: spacelike geodesic flows — stitched closed-form shooting across
// the atlas, direct ODE integration with chart hand-off, the transverse
// closure probe through the hole-filling chart, and constrained geodesics of
// the blended metric on the ambient hyperboloid.
//
// A unit spacelike geodesic with Clairaut constant c oscillates between the
// tangency lines y = -c and y = +c.  Between tangencies its x-displacement
// and arc length reduce to weighted band integrals of the profiles, so a
// full loop around the surface can be "shot" arc by arc: integrate the
// closed form across the band, hand the endpoint to the next chart through
// the atlas transition (picking up the designated tau wraps), and repeat
// until the loop returns to the start chart.  The terminal gap of that loop
// is the geometric closure defect; it must agree with the quadrature-side
// closure residual, and the ODE path must agree with both.

#ifndef ZOLL_GEODESICS_HPP_
#define ZOLL_GEODESICS_HPP_

// C++ headers
#include <array>      // array
#include <vector>     // vector

// zollgeo headers
#include "zoll/atlas.hpp"  // AmbientPoint, transition, profile_index
#include "zoll/spec.hpp"   // SurfaceSpec, BlaschkeSpec, ChartPoint, TangentVector

namespace zoll {

//----------------------------------------------------------------------------

// One monotone sweep of y across the band (-c, c), carried by a single chart.
struct GeodesicArc {
  int chart = 0;       // chart carrying this sweep
  double c = 0.0;      // tangency height
  int eps = -1;        // -1: rising sweep (y: -c -> +c), +1: falling sweep
  int eps1 = 1;        // sign of the Clairaut pairing in this chart
  double y_from = 0.0; // band endpoint where the sweep starts
  double y_to = 0.0;   // band endpoint where it ends
  double x_shift = 0.0; // signed x-displacement accumulated over the sweep
  double length = 0.0;  // arc length of the sweep
};

// A full shot around the surface: the arcs visited, the closure defect
// measured back in the start chart, and the accumulated length.
struct ClosureReport {
  std::vector<GeodesicArc> arcs;
  double terminal_gap = 0.0;
  double total_length = 0.0;
  bool closed = false;
};

// Shoots the unit spacelike geodesic with tangency height c, starting at the
// bottom tangency (0, -c) of start_chart on a rising sweep.  Parabolic and
// hyperbolic loops consist of one arc per chart the loop visits (2k arcs),
// stitched through the atlas transitions at the tangencies; elliptic
// surfaces live in a single chart, so the loop is one oscillation (two arcs)
// and its defect is measured against the rational translation p tau / q.
// Hyperbolic shooting requires c > 1 and an even start chart (odd charts
// carry the same loops with the roles of the sweeps exchanged).
ClosureReport shoot(const SurfaceSpec& spec, double c, int start_chart = 0,
                    int nodes = 256, double tol = 1e-6);

// Length of a single band sweep carried by `chart` at tangency height c.
// The profile deformation enters through its weighted band integral; with
// all profiles zero every sweep has length pi (elliptic: r pi).
double arc_length(const SurfaceSpec& spec, int chart, double c, int nodes = 256);

//----------------------------------------------------------------------------

// Controls for the direct ODE integration of the geodesic equations.
struct OdeOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  double h_max = 0.1;
  long long max_steps = 4000000;
  int tangency_target = 0;   // stop after this many tangencies (0: run to t_max)
  double drift_abort = 1e-6; // abort when a conserved quantity drifts past this
};

// One accepted integration step.
struct OdeSample {
  double t = 0.0;
  ChartPoint p;
  double dx = 0.0;
  double dy = 0.0;
};

// Outcome of an ODE run: the sampled trajectory, the worst conservation
// drifts seen (unit norm and Clairaut pairing), and — when the run completed
// a tangency-counted loop — the closure defect and the loop period.
struct OdeResult {
  std::vector<OdeSample> path;
  int tangencies = 0;
  double norm_drift = 0.0;
  double clairaut_drift = 0.0;
  bool completed_loop = false;
  double terminal_gap = 0.0;
  double period = 0.0;
};

// Integrates the geodesic equations of the chart metric from the given unit
// spacelike state.  Tangencies (sign changes of dy) are located by bisection;
// on parabolic and hyperbolic surfaces each tangency hands the state to the
// neighbor chart, which is where the coordinate expression of the next sweep
// stays regular.  Conservation of the unit norm and of the Clairaut pairing
// is monitored every step; drift beyond OdeOptions::drift_abort raises
// std::runtime_error with a diagnostic.
OdeResult ode_integrate(const SurfaceSpec& spec, const TangentVector& start,
                        double t_max, const OdeOptions& opts = {});

// Convenience wrapper for the closure measurement: starts at the bottom
// tangency of start_chart (matching shoot), integrates one full loop, and
// returns the run with terminal_gap and period filled in.
OdeResult ode_closure(const SurfaceSpec& spec, double c, int start_chart = 0,
                      const OdeOptions& opts = {});

//----------------------------------------------------------------------------

// Result of the transverse closure probe on a hyperbolic surface: the
// geodesic through a Killing zero, orthogonal to the Killing field, leaves
// the hole-filling chart on both sides; the defect between the two exit
// coordinates (measured in the adapted x of the receiving charts) equals the
// spec's translation parameter.
struct TransverseClosure {
  bool closed = false;  // whether these geodesics close (tau == 0)
  double gap = 0.0;     // ODE-measured exit defect, equal to |tau| up to solver error
};

// Integrates the Killing-orthogonal geodesic through the origin of the
// hole-filling chart in both directions up to the exit event uv = 1 and
// reports the defect; the boolean closure verdict is the exact test tau == 0.
// Raises std::runtime_error if the ODE measurement contradicts the verdict.
TransverseClosure perpendicular_closure_probe(const SurfaceSpec& spec);

// Verdict-only form of the probe.
bool perpendicular_closure_hyperbolic(const SurfaceSpec& spec);

//----------------------------------------------------------------------------

// Closure measurement for a geodesic of the blended metric on the ambient
// hyperboloid -x^2 + y^2 + z^2 = 1.
struct BlaschkeClosure {
  double min_gap = 0.0;      // minimal phase-space distance to the start
  double t_at_min = 0.0;     // parameter where that minimum occurs
  double max_drift = 0.0;    // worst hyperboloid-constraint drift before re-projection
  bool visited_v1 = false;   // entered the first deformation region
  bool visited_v2 = false;   // entered the second deformation region
};

// Integrates the constrained geodesic of the blended metric from `start` in
// direction `dir` (projected onto the tangent plane and normalized to unit
// length in the blended metric) up to t_max, re-projecting onto the
// hyperboloid after every step, and scans the window around one expected
// period for the closest phase-space return to the start.  Aborts with
// std::runtime_error if the pre-projection constraint drift exceeds 1e-8.
BlaschkeClosure blaschke_geodesic(const BlaschkeSpec& spec,
                                  const AmbientPoint& start,
                                  const std::array<double, 3>& dir,
                                  double t_max = 7.5);

}  // namespace zoll

#endif  // ZOLL_GEODESICS_HPP_
