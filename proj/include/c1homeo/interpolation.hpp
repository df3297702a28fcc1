// interpolation.hpp - building a closed C1 curve through a convergent marked
// sequence. The sequence is moved to a normalized chart (limit at the
// origin, marked line on the x-axis, approach from positive x), a monotone
// subsequence is extracted, consecutive points are joined by sine-corrected
// graph segments, and the open end is closed off by three arcs running
// around the top.
#pragma once

#include <vector>

#include "c1homeo/curves.hpp"
#include "c1homeo/sequences.hpp"

namespace c1homeo {

/// Rigid chart u -> flips(R(u - p)): p to the origin, the marked line to the
/// x-axis, with optional axis reflections fixed by the data.
struct AffineFrame {
  Point2 p{0.0, 0.0};
  double cos_a = 1.0, sin_a = 0.0;  // rotation by -angle(line)
  bool flip_x = false;
  bool flip_y = false;

  Point2 fwd(Point2 u) const;
  Point2 inv(Point2 u) const;
  Vec2 inv_vec(Vec2 v) const;
  double fwd_slope(double m) const;  // slope transform of the linear part
};

struct NormalizedSequence {
  AffineFrame frame;
  std::vector<Point2> pts;      // chart coordinates, x strictly decreasing
  std::vector<double> slopes;   // entry-direction slopes in the chart
  std::vector<size_t> picked;   // indices into the original entries
  bool on_axis = false;         // every chord was exactly on the marked line
};

/// Normalizes and greedily extracts `want` points subject to: |p| strictly
/// decreasing, x strictly decreasing, chord slopes to the origin positive
/// and strictly decreasing (or all exactly zero), successive chord slopes
/// strictly decreasing, |entry slope| nonincreasing. Throws
/// NotConvergentError when the sequence hypothesis (chords and entry
/// directions settle on the marked line) fails, InsufficientPointsError when
/// fewer than `want` points survive.
NormalizedSequence normalize_and_extract(const DirectionSequence& seq, int want,
                                         const ResolutionParams& r = {});

/// One graph segment joining (xk1, yk1) to (xk, yk), xk1 < xk, with endpoint
/// slopes mk1, mk. Two sine-corrected branches split at the midpoint, where
/// the value is the endpoint average and the slope twice the chord slope.
struct GammaSegment {
  double xk = 0.0, yk = 0.0, mk = 0.0;      // right endpoint
  double xk1 = 0.0, yk1 = 0.0, mk1 = 0.0;   // left endpoint

  double eval(double t) const;
  double deriv(double t) const;
};

struct ClosedCurveResult {
  ParamCurve curve;          // closed curve in the original coordinates
  std::vector<GammaSegment> segments;  // bottom graph pieces, left to right
  double x0 = 0.0, y0 = 0.0; // synthetic anchor (x1 + 1, y1)
  double y_max = 0.0;        // 1 + sampled max of the bottom graph
  AffineFrame frame;
  NormalizedSequence normalized;

  // Chart-frame pieces; the assembled curve is xi on [0, x0], then delta,
  // beta, alpha on unit intervals, total period x0 + 3.
  Point2 xi(double t) const;
  Vec2 xi_deriv(double t) const;
  Point2 alpha(double t) const;
  Vec2 alpha_deriv(double t) const;
  Point2 beta(double t) const;
  Vec2 beta_deriv(double t) const;
  Point2 delta(double t) const;
  Vec2 delta_deriv(double t) const;
};

ClosedCurveResult construct_closed_c1(const DirectionSequence& seq, int want,
                                      const ResolutionParams& r = {});

/// Construction acceptance: interpolation within 1e-9 (positions) and 1e-6
/// (tangent directions), junction continuity within 1e-12, all eight
/// junction slopes flat within 1e-9, arcs inside their regions (1e-9 slack),
/// and no self-intersections on a 2048-sample sweep per arc.
Verdict validate_construction(const ClosedCurveResult& c, const ResolutionParams& r = {});

/// SVG rendering of the constructed curve with the interpolated points.
std::string construction_to_svg(const ClosedCurveResult& c, int samples_per_arc = 512);

}  // namespace c1homeo
