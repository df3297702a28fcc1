#include "c1homeo/projgeom.hpp"

#include <algorithm>
#include <limits>

#include "c1homeo/errors.hpp"

namespace c1homeo {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegenerateTol = 1e-12;
}  // namespace

double normalize_dir(double theta) {
  double t = std::fmod(theta, kPi);
  if (t < 0.0) t += kPi;
  if (t >= kPi) t = 0.0;  // fmod rounding at the seam
  return t;
}

ProjDir dir_from_slope(double m) {
  if (std::isinf(m)) return {kPi / 2.0};
  return {normalize_dir(std::atan(m))};
}

double slope_of_dir(ProjDir d) {
  if (std::abs(d.theta - kPi / 2.0) < 1e-15)
    return std::numeric_limits<double>::infinity();
  return std::tan(d.theta);
}

std::optional<ProjDir> dir_of_vec(Vec2 v) {
  if (v.x == 0.0 && v.y == 0.0) return std::nullopt;
  return ProjDir{normalize_dir(std::atan2(v.y, v.x))};
}

double proj_distance(ProjDir a, ProjDir b) {
  double d = std::abs(normalize_dir(a.theta) - normalize_dir(b.theta));
  return std::min(d, kPi - d);
}

CyclicOrder cyclic_order(ProjDir a, ProjDir b, ProjDir c) {
  if (proj_distance(a, b) < kDegenerateTol || proj_distance(b, c) < kDegenerateTol ||
      proj_distance(a, c) < kDegenerateTol)
    return CyclicOrder::DEGENERATE;
  double ob = normalize_dir(b.theta - a.theta);
  double oc = normalize_dir(c.theta - a.theta);
  return ob < oc ? CyclicOrder::CCW : CyclicOrder::CW;
}

std::optional<ProjDir> mean_dir(const std::vector<ProjDir>& dirs) {
  if (dirs.empty()) return std::nullopt;
  double cs = 0.0, sn = 0.0;
  for (const ProjDir& d : dirs) {
    cs += std::cos(2.0 * d.theta);
    sn += std::sin(2.0 * d.theta);
  }
  double r = std::hypot(cs, sn);
  if (r < 1e-9 * static_cast<double>(dirs.size())) return std::nullopt;
  return ProjDir{normalize_dir(0.5 * std::atan2(sn, cs))};
}

void ResolutionParams::validate() const {
  if (tail_length < 4) throw ConstraintViolationError("tail_length must be >= 4");
  if (!(dir_tolerance > 0.0) || !(slope_tolerance > 0.0))
    throw ConstraintViolationError("tolerances must be positive");
  if (h_grid.empty()) throw ConstraintViolationError("h_grid must be nonempty");
  for (size_t i = 0; i < h_grid.size(); ++i) {
    if (!(h_grid[i] > 0.0)) throw ConstraintViolationError("h_grid entries must be positive");
    if (i > 0 && !(h_grid[i] < h_grid[i - 1]))
      throw ConstraintViolationError("h_grid must be strictly decreasing");
  }
  if (!(c1_ratio > 0.0 && c1_ratio < 1.0))
    throw ConstraintViolationError("c1_ratio must lie in (0,1)");
  if (dir_tail_levels < 1 || dir_tail_levels > static_cast<int>(h_grid.size()))
    throw ConstraintViolationError("dir_tail_levels out of range");
}

Vec2 rotate_vec(Vec2 v, double phi) {
  double c = std::cos(phi), s = std::sin(phi);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

}  // namespace c1homeo
