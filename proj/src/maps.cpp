// maps.cpp - catalog construction. Inverses that lack closed forms solve a
// strictly monotone 1-D equation by bisection; every such equation comes
// with a certified bracket, so bisection is exact to rounding.
#include "c1homeo/maps.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "c1homeo/errors.hpp"

namespace c1homeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

// exp(1 - 1/(1-s^2)) on (-1, 1), 0 outside: the standard flat-topped bump.
double exp_bump(double s) {
  double s2 = s * s;
  if (s2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s2));
}

template <class F>
double bisect_increasing(const F& f, double lo, double hi, double target) {
  double flo = f(lo), fhi = f(hi);
  if (flo > target || fhi < target)
    throw RootNotBracketedError("bisect: target outside bracket");
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) <= target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double bump_g(double t) {
  // Support (1/2, 2) in the slope variable; s = (4t-5)/3 maps it onto (-1,1).
  double s = (4.0 * t - 5.0) / 3.0;
  return 1.0 + 0.5 * exp_bump(s);
}

double bump_q(double t) {
  double u = 2.0 * t;
  if (u * u >= 1.0) return 1.0;
  return 1.0 + t * exp_bump(u);
}

double bump_q_deriv(double t) {
  double u = 2.0 * t;
  if (u * u >= 1.0) return 0.0;
  double d = 1.0 - u * u;
  return exp_bump(u) * (1.0 - 2.0 * u * u / (d * d));
}

double shear_profile_margin() {
  // q - t q' sampled on a 4096 grid; this margin is what keeps every
  // y -> y*q(x/y) shear strictly monotone.
  static const double margin = [] {
    const int n = 4096;
    const double a = -1.0 + 1e-6, b = 1.0 - 1e-6;
    double m = 2.0;
    for (int i = 0; i < n; ++i) {
      double t = a + (b - a) * i / (n - 1);
      double v = bump_q(t) - t * bump_q_deriv(t);
      if (v < m) m = v;
    }
    if (m <= 0.0)
      throw ConstraintViolationError(
          "shear profile fails the monotonicity certificate");
    return m;
  }();
  return margin;
}

double bump_w(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * (3.0 - 2.0 * t);
}

double bump_w_deriv(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return 6.0 * t * (1.0 - t);
}

PlaneMap identity_map() {
  auto id = [](Point2 p) { return p; };
  return {"identity", id, id};
}

PlaneMap rotation_map(double degrees) {
  double phi = degrees * kPi / 180.0;
  double c = std::cos(phi), s = std::sin(phi);
  auto rot = [](double c_, double s_) {
    return [c_, s_](Point2 p) { return Point2{c_ * p.x - s_ * p.y, s_ * p.x + c_ * p.y}; };
  };
  char buf[64];
  std::snprintf(buf, sizeof buf, "rot:%g", degrees);
  return {buf, rot(c, s), rot(c, -s)};
}

PlaneMap map_G() {
  auto fwd = [](Point2 p) {
    if (p.x == 0.0) return p;
    double g = bump_g(p.y / p.x);
    return Point2{p.x * g, p.y * g};
  };
  // y'/x' = y/x: the slope argument is invariant, so the inverse divides by
  // the same factor.
  auto inv = [](Point2 p) {
    if (p.x == 0.0) return p;
    double g = bump_g(p.y / p.x);
    return Point2{p.x / g, p.y / g};
  };
  return {"G", fwd, inv};
}

PlaneMap map_H() {
  auto fwd = [](Point2 p) {
    double r = std::hypot(p.x, p.y);
    return Point2{r * p.x, r * p.y};
  };
  auto inv = [](Point2 p) {
    double r = std::hypot(p.x, p.y);
    if (r == 0.0) return p;
    double s = std::sqrt(r);
    return Point2{p.x / s, p.y / s};
  };
  return {"H", fwd, inv};
}

PlaneMap map_Hinv() {
  PlaneMap h = map_H();
  return {"Hinv", h.inv, h.fwd};
}

PlaneMap map_Q() {
  auto fwd = [](Point2 p) {
    if (p.y == 0.0) return p;
    return Point2{p.x, p.y * bump_q(p.x / p.y)};
  };
  auto inv = [](Point2 p) {
    if (p.y == 0.0) return p;
    // y*q(x/y) is strictly increasing in y (margin shear_profile_margin())
    // and q ranges in (0.8, 1.2), so y lies between p.y/1.2 and p.y/0.8.
    double x = p.x;
    auto f = [x](double y) { return y * bump_q(x / y); };
    double lo = p.y > 0.0 ? p.y / 1.2 : p.y / 0.8;
    double hi = p.y > 0.0 ? p.y / 0.8 : p.y / 1.2;
    return Point2{x, bisect_increasing(f, lo, hi, p.y)};
  };
  return {"Q", fwd, inv};
}

namespace {

// Signed-radius chart: theta in [0, pi), r carries the side. Continuous as a
// map of the plane even though the chart itself jumps across the x-axis.
void to_signed_polar(Point2 p, double& r, double& theta) {
  double r0 = std::hypot(p.x, p.y);
  double a = std::atan2(p.y, p.x);
  if (a < 0.0) {
    theta = a + kPi;
    r = -r0;
  } else if (a == kPi) {
    theta = 0.0;
    r = -r0;
  } else {
    theta = a;
    r = r0;
  }
}

double w_angle(double theta, double wr) {
  return kPi * bump_w(theta / kPi) * (1.0 - wr) + theta * wr;
}

}  // namespace

PlaneMap map_W() {
  auto fwd = [](Point2 p) {
    double r, theta;
    to_signed_polar(p, r, theta);
    if (std::abs(r) >= 1.0 || r == 0.0) return p;
    double th = w_angle(theta, bump_w(std::abs(r)));
    return Point2{r * std::cos(th), r * std::sin(th)};
  };
  auto inv = [](Point2 p) {
    double r, th_img;
    to_signed_polar(p, r, th_img);
    if (std::abs(r) >= 1.0 || r == 0.0) return p;
    // theta -> w_angle(theta, wr) fixes 0 and pi and has derivative >= wr > 0.
    double wr = bump_w(std::abs(r));
    auto f = [wr](double theta) { return w_angle(theta, wr); };
    double theta = bisect_increasing(f, 0.0, kPi, th_img);
    return Point2{r * std::cos(theta), r * std::sin(theta)};
  };
  return {"W", fwd, inv};
}

namespace {

// C-infinity step: 1 for s <= 0, 0 for s >= 1.
double smooth_step_down(double s) {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  double a = std::exp(-1.0 / (1.0 - s));
  double b = std::exp(-1.0 / s);
  return a / (a + b);
}

// Displacement ramp of the planted shear: 1 on the half ball, 0 outside.
double rho_ramp(double r) { return smooth_step_down(2.0 * r - 1.0); }

// rho = shear blended to the identity across 1/2 <= |u| <= 1. It fixes the
// x-component, so injectivity is a 1-D monotonicity statement in y; the
// margin is bounded below by ~0.55 (see tests).
Point2 rho_fwd(Point2 u) {
  double r = std::hypot(u.x, u.y);
  if (r >= 1.0 || u.y == 0.0) return u;
  double c = rho_ramp(r);
  if (c == 0.0) return u;
  double q = bump_q(u.x / u.y);
  return {u.x, u.y * (1.0 + c * (q - 1.0))};
}

Point2 rho_inv(Point2 u) {
  if (std::hypot(u.x, u.y) >= 1.0 || u.y == 0.0) return u;
  double x = u.x;
  auto f = [x](double y) {
    double c = rho_ramp(std::hypot(x, y));
    return y * (1.0 + c * (bump_q(x / y) - 1.0));
  };
  double lo = u.y > 0.0 ? u.y / 1.2 : u.y / 0.8;
  double hi = u.y > 0.0 ? u.y / 0.8 : u.y / 1.2;
  return {x, bisect_increasing(f, lo, hi, u.y)};
}

// Index of the support ball containing p (0 when outside all of them).
// Ball n: center (2^-n, 0), radius 2^-(n+2); the balls are pairwise disjoint.
int ball_index(Point2 p, int n_max) {
  if (p.x <= 0.0 || std::abs(p.y) > 0.126) return 0;
  int n0 = static_cast<int>(std::lround(-std::log2(p.x)));
  for (int n = n0 - 1; n <= n0 + 1; ++n) {
    if (n < 1 || n > n_max) continue;
    double c = std::ldexp(1.0, -n);
    double s = std::ldexp(1.0, -(n + 2));
    double dx = p.x - c;
    if (dx * dx + p.y * p.y < s * s) return n;
  }
  return 0;
}

}  // namespace

PlaneMap map_P(int n_max) {
  if (n_max < 1 || n_max > 40)
    throw ConstraintViolationError("map_P: n_max must be in [1, 40]");
  auto apply = [n_max](Point2 p, bool forward) {
    int n = ball_index(p, n_max);
    if (n == 0) return p;
    double c = std::ldexp(1.0, -n);
    double s = std::ldexp(1.0, -(n + 2));
    Point2 u{(p.x - c) / s, p.y / s};
    Point2 v = forward ? rho_fwd(u) : rho_inv(u);
    return Point2{c + s * v.x, s * v.y};
  };
  char buf[32];
  std::snprintf(buf, sizeof buf, "P:%d", n_max);
  return {buf, [apply](Point2 p) { return apply(p, true); },
          [apply](Point2 p) { return apply(p, false); }};
}

PlaneMap corner_shear_map() {
  return {"corner_shear",
          [](Point2 p) { return Point2{p.x, p.y + std::abs(p.x)}; },
          [](Point2 p) { return Point2{p.x, p.y - std::abs(p.x)}; }};
}

PlaneMap compose(const PlaneMap& f, const PlaneMap& g) {
  auto ff = f.fwd, gf = g.fwd, fi = f.inv, gi = g.inv;
  return {f.name + "*" + g.name,
          [ff, gf](Point2 p) { return ff(gf(p)); },
          [fi, gi](Point2 p) { return gi(fi(p)); }};
}

PlaneMap inverse_of(const PlaneMap& f) {
  return {"inv(" + f.name + ")", f.inv, f.fwd};
}

PlaneMap conjugate_by_rotation(double degrees, const PlaneMap& f) {
  PlaneMap r = rotation_map(degrees);
  PlaneMap c = compose(r, compose(f, rotation_map(-degrees)));
  char buf[32];
  std::snprintf(buf, sizeof buf, "conj:%g:", degrees);
  c.name = buf + f.name;
  return c;
}

PlaneMap map_by_name(const std::string& name) {
  if (name == "identity") return identity_map();
  if (name == "G") return map_G();
  if (name == "H") return map_H();
  if (name == "Hinv") return map_Hinv();
  if (name == "Q") return map_Q();
  if (name == "W") return map_W();
  if (name == "corner_shear") return corner_shear_map();
  try {
    if (name.rfind("rot:", 0) == 0) return rotation_map(std::stod(name.substr(4)));
    if (name.rfind("P:", 0) == 0) {
      size_t used = 0;
      int n = std::stoi(name.substr(2), &used);
      if (used == name.size() - 2) return map_P(n);
    }
    if (name.rfind("conj:", 0) == 0) {
      size_t colon = name.find(':', 5);
      if (colon != std::string::npos) {
        double deg = std::stod(name.substr(5, colon - 5));
        return conjugate_by_rotation(deg, map_by_name(name.substr(colon + 1)));
      }
    }
  } catch (const std::logic_error&) {
    // fall through to the unknown-name error
  }
  throw GeomError("unknown map name: " + name);
}

}  // namespace c1homeo
