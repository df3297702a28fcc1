// projgeom.hpp - points, projective directions on [0, pi), and the cyclic
// order of the direction circle. All direction arithmetic is mod pi: theta
// and theta + pi name the same undirected tangent line.
#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace c1homeo {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 p, Vec2 v) { return {p.x + v.x, p.y + v.y}; }
inline Vec2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }

/// Undirected tangent direction: angle in [0, pi), theta ~ theta + pi.
struct ProjDir {
  double theta = 0.0;
};

/// Reduce any angle to the projective fundamental domain [0, pi).
double normalize_dir(double theta);

/// Direction of a slope; infinite slope maps to the vertical pi/2.
ProjDir dir_from_slope(double m);

/// Slope of a direction; vertical returns +infinity.
double slope_of_dir(ProjDir d);

/// Direction of a 2-vector (mod pi). Zero vector has no direction.
std::optional<ProjDir> dir_of_vec(Vec2 v);

/// Metric on the direction circle: min(|dtheta|, pi - |dtheta|), range [0, pi/2].
double proj_distance(ProjDir a, ProjDir b);

enum class CyclicOrder { CCW, CW, DEGENERATE };

/// Orientation of the ordered triple (a, b, c) on the direction circle
/// (offsets taken mod pi from a). DEGENERATE when any two directions lie
/// within 1e-12 of each other.
CyclicOrder cyclic_order(ProjDir a, ProjDir b, ProjDir c);

/// Circular mean of directions via doubled angles; nullopt when the doubled
/// resultant vanishes (antipodal spread, no meaningful mean).
std::optional<ProjDir> mean_dir(const std::vector<ProjDir>& dirs);

/// Working resolution for every finitary surrogate in the toolkit.
/// h_grid must be strictly decreasing and positive; tolerances in radians.
struct ResolutionParams {
  int tail_length = 40;
  double dir_tolerance = 1e-3;
  double slope_tolerance = 1e-3;
  std::vector<double> h_grid = {1e-2, 3.162e-3, 1e-3, 3.162e-4,
                                1e-4, 3.162e-5, 1e-5};
  // Derived knobs for the C1 surrogate sample grid and the secant tail.
  double c1_span = 0.5;     // largest parameter offset probed by c1_surrogate
  double c1_ratio = 0.7;    // geometric shrink factor of the offset grid
  int dir_tail_levels = 3;  // smallest h levels that decide tangent existence

  void validate() const;  // throws ConstraintViolationError on bad fields
};

/// Rotate a vector by the angle phi.
Vec2 rotate_vec(Vec2 v, double phi);

}  // namespace c1homeo
