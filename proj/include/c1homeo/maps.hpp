// maps.hpp - the catalog of plane homeomorphism candidates. Every map
// carries a forward and an inverse evaluator; inverses are either closed
// forms or monotone 1-D bisection solves, never approximate fits.
#pragma once

#include <functional>
#include <string>

#include "c1homeo/projgeom.hpp"

namespace c1homeo {

struct PlaneMap {
  std::string name;
  std::function<Point2(Point2)> fwd;
  std::function<Point2(Point2)> inv;

  Point2 operator()(Point2 p) const { return fwd(p); }
};

// --- bump profiles ---------------------------------------------------------

/// Ray-dilation profile of G: smooth, positive, == 1 outside (1/2, 2),
/// g(1) = 1 + exp(-1/8)/2 != 1.
double bump_g(double t);

/// Shear profile q: smooth, q(0) = 1, q'(0) = 1, == 1 outside [-1/2, 1/2],
/// and q(t) - t q'(t) >= shear_profile_margin() > 0, which is exactly what
/// makes y -> y*q(x/y) strictly monotone in y for every fixed x.
double bump_q(double t);
double bump_q_deriv(double t);

/// Certified positive lower bound of q - t q' (grid certificate evaluated
/// once at startup; a nonpositive value throws ConstraintViolationError).
double shear_profile_margin();

/// Angle blend of W: C1 nondecreasing [0,1] -> [0,1], w(0) = 0, w(1) = 1,
/// w'(0) = w'(1) = 0. Clamped outside [0,1].
double bump_w(double t);
double bump_w_deriv(double t);

// --- catalog ---------------------------------------------------------------

PlaneMap identity_map();
PlaneMap rotation_map(double degrees);

/// Ray dilation (x, y) -> g(y/x)*(x, y) for x != 0, identity on x = 0.
/// Scales each ray through the origin by a slope-dependent factor; not
/// differentiable at the origin, identity outside the slope sector (1/2, 2).
PlaneMap map_G();

/// Radial square p -> |p| p and its inverse p -> p / sqrt(|p|).
PlaneMap map_H();
PlaneMap map_Hinv();

/// Vertical shear (x, y) -> (x, y*q(x/y)) for y != 0, identity on y = 0.
PlaneMap map_Q();

/// Angle reparametrization inside the unit disk. In the signed-radius chart
/// (r, theta) with theta in [0, pi), W sends theta to
///   pi*w(theta/pi)*(1 - w(|r|)) + theta*w(|r|)   for |r| < 1
/// and is the identity for |r| >= 1. Radius and its sign are preserved.
PlaneMap map_W();

/// Accumulating bumps: a copy of the shear rho (see map_Q's profile blended
/// to the identity across 1/2 <= |u| <= 1) planted in the ball of radius
/// 2^-(n+2) around (2^-n, 0) for n = 1..n_max, identity elsewhere.
/// Requires 1 <= n_max <= 40 (support radii reach floating-point scale
/// beyond that).
PlaneMap map_P(int n_max);

/// (x, y) -> (x, y + |x|): a homeomorphism that creases every curve
/// crossing the y-axis transversally.
PlaneMap corner_shear_map();

// --- combinators -------------------------------------------------------------

/// f after g.
PlaneMap compose(const PlaneMap& f, const PlaneMap& g);
PlaneMap inverse_of(const PlaneMap& f);
/// rot(deg) o f o rot(-deg).
PlaneMap conjugate_by_rotation(double degrees, const PlaneMap& f);

/// Parses "identity", "rot:<deg>", "G", "H", "Hinv", "Q", "W", "P:<n_max>",
/// "corner_shear", "conj:<deg>:<name>". Throws GeomError on unknown names.
PlaneMap map_by_name(const std::string& name);

}  // namespace c1homeo
