#pragma once

#include <string>
#include <vector>

#include "c1homeo/curves.hpp"
#include "c1homeo/induced.hpp"
#include "c1homeo/maps.hpp"
#include "c1homeo/projgeom.hpp"
#include "c1homeo/sequences.hpp"
#include "c1homeo/verdict.hpp"

namespace c1homeo {

// A test curve together with the parameters where smoothness of its image
// gets probed.
struct BatteryCurve {
  std::string name;
  ParamCurve curve;
  std::vector<double> probes;
};

struct NamedSequence {
  std::string name;
  DirectionSequence seq;
};

// Everything a classification run exercises: curves for property (a),
// points for property (b), transverse sequences for property (c).
struct Battery {
  std::vector<BatteryCurve> curves;
  std::vector<NamedSequence> sequences;
  std::vector<Point2> points;
};

// Built-in battery: lines through the origin at six angles, two circles,
// three graphs, a horizontal line; spiral-in, harmonic and tangent-line
// sequences; six probe points including the origin.
Battery default_battery();

// JSON battery description; see README for the schema.
Battery battery_from_json(const std::string& text);

// The built-in battery in the JSON schema battery_from_json accepts.
std::string default_battery_json();

// Preflight: every battery curve must be accepted by the smoothness
// surrogate at its own probes, every sequence must be transverse.
Verdict validate_battery(const Battery& battery, const ResolutionParams& r = {});

struct PushforwardEstimate {
  Vec2 value;
  double residual = 0.0;
};

// One-sided difference quotients of f at p along v over the step grid
// (scaled by |p| away from the origin), extrapolated assuming a first-order
// error term.  Throws InfiniteQuotientError when the quotient norms blow up.
PushforwardEstimate pushforward_vector(const PlaneMap& f, Point2 p, Vec2 v,
                                       const ResolutionParams& r = {});

// Estimates pushforwards along 16 evenly spaced unit directions and fits a
// single linear map to them.  FAIL reasons: INFINITE_QUOTIENT (some quotient
// blows up), ZERO_COLLAPSE (all pushforwards vanish), NONLINEAR (no linear
// map reproduces the estimates to slope_tolerance).
Verdict differentiability_probe(const PlaneMap& f, Point2 p,
                                const ResolutionParams& r = {});

// Property (a): images of the battery curves stay plausibly C1 at the probe
// parameters.
Verdict check_property_a(const PlaneMap& f, const Battery& battery,
                         const ResolutionParams& r = {});

// Property (b): the induced map on directions at each battery point is a
// plausible circle homeomorphism.
Verdict check_property_b(const PlaneMap& f, const Battery& battery,
                         const ResolutionParams& r = {});

// Property (c): pushforwards of the battery's transverse sequences stay
// transverse.
Verdict check_property_c(const PlaneMap& f, const Battery& battery,
                         const ResolutionParams& r = {});

struct ProbeResult {
  std::string kind;
  std::string target;
  Verdict verdict;
};

struct ClassificationReport {
  std::string map_name;
  ResolutionParams resolution;
  Verdict prop_a, prop_b, prop_c;
  std::vector<ProbeResult> probes;
  Status overall = Status::INCONCLUSIVE;
};

// Full run: the three property checks plus an informational
// differentiability probe at every battery point.  `overall` combines only
// the three properties; the probes can fail for maps that are genuinely in
// the class (and do, for the catalog maps with non-smooth charts).
ClassificationReport classify(const PlaneMap& f, const Battery& battery,
                              const ResolutionParams& r = {});

// Deterministic JSON with stable key order; doubles at 12 significant
// digits so identical inputs produce identical bytes.
std::string report_to_json(const ClassificationReport& report);

}  // namespace c1homeo
