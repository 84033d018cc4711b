// zollgeo: lightlike structure and conformal diagnostics — null-leaf tracing
// with boundary asymptotes, the reflexion map with its regularity probe, the
// k-ping-pong checker and boundary normalization, and the closed-form
// conformal profile of de Sitter.

#ifndef ZOLL_CONFORMAL_HPP_
#define ZOLL_CONFORMAL_HPP_

// C++ headers
#include <functional>  // function
#include <vector>      // vector

// zollgeo headers
#include "zoll/profile.hpp"  // KappaProfile
#include "zoll/spec.hpp"     // SurfaceSpec, ChartPoint

namespace zoll {

//----------------------------------------------------------------------------

// The primitive of kappa(s)/s^2 vanishing at 0, together with its tail
// limits.  Lightlike leaves of a parabolic surface are graphs built from
// these primitives, and the limits are the x-coordinates of the vertical
// boundary asymptotes the leaves approach.
class NullPrimitive {
 public:
  explicit NullPrimitive(KappaProfile kappa) : kappa_(std::move(kappa)) {}

  double value(double y) const;
  double delta() const;        // limit as y -> -infinity
  double delta_upper() const;  // limit as y -> +infinity

  const KappaProfile& kappa() const { return kappa_; }

 private:
  KappaProfile kappa_;
};

//----------------------------------------------------------------------------

// One chart-resident piece of a traced lightlike leaf.  form 1 is the graph
// x = H(y) + cst, form 2 the graph x = 2/y - H(y) + cst, where H is the
// chart's stitched primitive; form 0 marks the Killing null orbit y = 0,
// which is a leaf of the second family through y = 0.  The asymptote is the
// x-value the segment's graph approaches when continued indefinitely in the
// travel direction (for the final segment: the boundary asymptote).
struct NullLeafSegment {
  int chart = 0;
  int form = 1;
  double cst = 0.0;
  double y_from = 0.0;
  double y_to = 0.0;
  double asymptote = 0.0;
};

struct NullLeaf {
  std::vector<NullLeafSegment> segments;
};

// Traces the lightlike leaf of the requested foliation (1 or 2) through p
// toward y_target.  Second-family graphs blow up at y = 0, so a trace
// crossing zero hands the leaf to the neighbor chart, where it continues as
// a first-family graph; the returned segments record the full itinerary.
// Throws std::domain_error when the target cannot be reached (a second-
// family graph is asymptotic to the Killing orbit and never attains y = 0).
NullLeaf null_trace(const SurfaceSpec& spec, const ChartPoint& p, int foliation,
                    double y_target);

// Downward boundary asymptote of the leaf through p: traces toward
// y -> -infinity and returns the final segment's asymptote.
double leaf_asymptote(const SurfaceSpec& spec, const ChartPoint& p,
                      int foliation);

// x-coordinate of a traced leaf segment's graph at height y.  Throws
// std::domain_error for form-0 segments (the Killing orbit is the line
// y = 0, not a graph) and for form-2 segments at y = 0.
double leaf_x(const SurfaceSpec& spec, const NullLeafSegment& segment,
              double y);

//----------------------------------------------------------------------------

// The reflexion across the lightlike corner of a parabolic surface: the map
// pairing each transversal coordinate y with the coordinate P(y) on the
// other side of 0 whose leaf of the other family meets the same boundary
// point.  Strictly decreasing, sign-reversing, and exactly -y when the
// profiles vanish.
class ReflexionMap {
 public:
  explicit ReflexionMap(const SurfaceSpec& spec);

  double operator()(double y) const;

  double delta0() const { return delta0_; }
  double delta1() const { return delta1_; }

 private:
  NullPrimitive h0_;
  NullPrimitive h1_;
  double delta0_ = 0.0;
  double delta1_ = 0.0;
};

// One-shot evaluation of the reflexion map.
double reflexion_P(const SurfaceSpec& spec, double y);

// One-sided derivative data of the reflexion map at 0.  The map is C^1
// across 0 (c1_match ~ 0) for every admissible surface, while the one-sided
// second derivatives are 2*delta1 (right) and 2*delta0 (left): their jump
// detects the loss of C^2 regularity, with 2|delta1 - delta0| as the
// closed-form prediction.
struct RegularityReport {
  double c1_match = 0.0;
  double second_derivative_jump = 0.0;
  double predicted_jump = 0.0;
};

RegularityReport regularity_probe(const ReflexionMap& pbar);

//----------------------------------------------------------------------------

// A conformal boundary presented as two strictly increasing maps theta+ and
// theta- that commute with the translation by sqrt(2)*pi.  Inverse queries
// are answered by bracketed bisection, so closed forms, interpolants, or
// composed test data all work.
class BoundaryGraph {
 public:
  BoundaryGraph(std::function<double(double)> theta_plus,
                std::function<double(double)> theta_minus);

  double theta_plus(double x) const { return plus_(x); }
  double theta_minus(double x) const { return minus_(x); }
  double theta_minus_inverse(double target) const;

  // The ping-pong advance T = (theta-)^{-1} o theta+.
  double advance(double x) const;

  // Closed-form boundary of the k-fold de Sitter cover:
  // theta±(s) = s ± pi/(k sqrt 2).
  static BoundaryGraph desitter(int k = 1);

 private:
  std::function<double(double)> plus_;
  std::function<double(double)> minus_;
};

// sup over one period of |T^k(x) - x - sqrt(2) pi|: zero exactly when the
// boundary has the k-ping-pong property.
double ppp_check(const BoundaryGraph& b, int k);

// Conjugation of the ping-pong advance to the translation by sqrt(2) pi / k:
// psi(x) = (1/k) sum_{j<k} (T^j(x) - j sqrt(2) pi / k).  The residual reports
// sup |psi(T(x)) - psi(x) - sqrt(2) pi / k| over one period.
struct NormalizedBoundary {
  std::function<double(double)> psi;
  std::function<double(double)> normalized_advance;  // psi o T o psi^{-1}
  double conjugation_residual = 0.0;
};

NormalizedBoundary normalize_boundary(const BoundaryGraph& b, int k);

//----------------------------------------------------------------------------

// Cumulative conformal coordinate of the de Sitter cylinder: 2 atan(e^t),
// increasing from 0 to pi; the height of the conformal image is pi.
double desitter_conformal_profile(double t);
double desitter_conformal_height();

}  // namespace zoll

#endif  // ZOLL_CONFORMAL_HPP_
