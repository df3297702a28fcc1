// curves.hpp - parametrized plane curves and the secant-slope tangent
// machinery. Tangent directions are always the projective directions of
// chords: they see the image of the curve, not its parametrization, so a
// curve with a stationary parameter (e.g. t -> (t^3, 0)) still reports the
// direction of its trace.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "c1homeo/projgeom.hpp"
#include "c1homeo/verdict.hpp"

namespace c1homeo {

struct ParamCurve {
  double t_min = 0.0;
  double t_max = 1.0;
  bool closed = false;
  std::function<Point2(double)> eval;
  // Analytic velocity, when the construction provides one.
  std::function<Vec2(double)> deriv;  // empty when absent
  // Parameters where piecewise constructions join; endpoints not included.
  std::vector<double> junction_params;
  std::string name;

  bool has_deriv() const { return static_cast<bool>(deriv); }
  double length() const { return t_max - t_min; }
  Point2 at(double t) const { return eval(t); }
  /// Clamp (open) or wrap (closed) a parameter into the domain.
  double canon_param(double t) const;
  bool in_domain(double t) const { return t >= t_min && t <= t_max; }
};

/// Outcome of a tangent-direction estimate at one parameter.
struct SlopeEstimate {
  ProjDir dir;
  double residual = 0.0;  // max spread of deciding secants, radians
  bool exists = false;
};

/// Direction of the chord from c(t0) to c(t0+h).
/// Throws CoincidentPointsError when the chord degenerates.
ProjDir secant_dir(const ParamCurve& c, double t0, double h);

/// Tangent direction at t0. Uses the analytic derivative when present
/// (residual 0); otherwise estimates from two-sided secants over r.h_grid.
/// Existence is decided on the smallest r.dir_tail_levels grid levels: all
/// deciding secant directions must sit within r.slope_tolerance of their
/// circular mean. At open endpoints the stencil is one-sided.
SlopeEstimate tangent_at(const ParamCurve& c, double t0, const ResolutionParams& r);

/// Elementwise tangent_at over a parameter list.
std::vector<SlopeEstimate> slope_function(const ParamCurve& c,
                                          const std::vector<double>& params,
                                          const ResolutionParams& r);

/// Finitary C1 test at t0: samples tangent directions at parameters
/// t0 +- c1_span * c1_ratio^i (i = 0..tail_length-1, both available sides)
/// and PASSes iff the direction at t0 exists and every sampled direction in
/// the last quarter of the tail lies within r.dir_tolerance of it. A corner
/// (stable but distinct one-sided limits) FAILs; scattered estimation
/// breakdown is INCONCLUSIVE. residuals: "oscillation" = max tail distance
/// over the last half, "base_residual" = residual of the t0 estimate.
Verdict c1_surrogate(const ParamCurve& c, double t0, const ResolutionParams& r);

/// Composition f o c as a curve; analytic derivative is dropped (the map is
/// a black box), junctions and domain are preserved.
ParamCurve image_curve(const std::function<Point2(Point2)>& f, const ParamCurve& c);

/// Checks that two curves meeting at an accumulating family of intersection
/// points have the same tangent direction at the accumulation point p.
/// Preconditions enforced: every intersection lies on both curves within
/// 1e-9, the family converges to p strictly monotonically in norm, at least
/// 3 points distinct from p. Violations throw BadWitnessError.
Verdict accumulation_tangent_check(const ParamCurve& c1, const ParamCurve& c2,
                                   Point2 p, const std::vector<Point2>& intersections,
                                   const ResolutionParams& r);

/// Parameter of the point on c nearest to q (coarse scan + local refine).
double nearest_param(const ParamCurve& c, Point2 q, int scan = 1024);

// --- catalog -------------------------------------------------------------

/// Graph t -> (t, f(t)); fp may be empty for derivative-free graphs.
ParamCurve graph_curve(std::function<double(double)> f,
                       std::function<double(double)> fp,
                       double a, double b, std::string name = "graph");

ParamCurve line_through(Point2 p, ProjDir d, double half_length = 4.0);

ParamCurve circle(Point2 center, double radius);

/// Graph of x^2 sin(1/x) extended by 0: differentiable everywhere but not C1
/// at 0 (derivative oscillates with amplitude 1).
ParamCurve x2sin1x(double half_width = 0.5);

/// Graph of x^3 sin(1/x) extended by 0: C1 (derivative -> 0 at 0).
ParamCurve x3sin1x(double half_width = 0.5);

// --- sampled-curve CSV ("t,x,y,slope"; slope "inf" when vertical) ---------

struct CurveSample {
  double t;
  Point2 p;
  double slope;  // +inf encodes vertical
};

std::vector<CurveSample> sample_curve(const ParamCurve& c, int n_samples,
                                      const ResolutionParams& r);
std::string curve_samples_to_csv(const std::vector<CurveSample>& rows);
std::vector<CurveSample> curve_samples_from_csv(const std::string& text);

}  // namespace c1homeo
