#include <cmath>
#include <random>

#include "doctest.h"

#include "c1homeo/errors.hpp"
#include "c1homeo/interpolation.hpp"

using namespace c1homeo;

namespace {

constexpr double kPi = 3.14159265358979323846;
const ResolutionParams kRes{};

// Tangency points of a family of lines through the origin with y = x^2:
// p_n = (1/n, 1/n^2), entry slope 2/n, limit 0 along the x-axis.
DirectionSequence parabola_tangents(int count) {
  DirectionSequence s;
  for (int n = 1; n <= count; ++n)
    s.entries.push_back({{1.0 / n, 1.0 / (double(n) * n)}, dir_from_slope(2.0 / n)});
  s.limit_point = {0.0, 0.0};
  s.limit_dir = ProjDir{0.0};
  return s;
}

DirectionSequence on_axis_sequence(int count) {
  DirectionSequence s;
  for (int k = 1; k <= count; ++k)
    s.entries.push_back({{1.0 / k, 0.0}, dir_from_slope(1.0 / (double(k) * k))});
  s.limit_point = {0.0, 0.0};
  s.limit_dir = ProjDir{0.0};
  return s;
}

}  // namespace

TEST_CASE("AffineFrame round trips points, vectors and slopes") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    AffineFrame f;
    f.p = {u(rng), u(rng)};
    double a = u(rng);
    f.cos_a = std::cos(a);
    f.sin_a = std::sin(a);
    f.flip_x = i % 2;
    f.flip_y = i % 3 == 0;
    Point2 q{u(rng), u(rng)};
    Point2 r = f.inv(f.fwd(q));
    CHECK(dist(r, q) < 1e-12);
    // inv_vec undoes the linear part: pushing the displaced point through
    // the chart recovers the original chart vector.
    Vec2 w{u(rng), u(rng)};
    Vec2 v = f.inv_vec(w);
    Point2 base = f.inv(Point2{0.0, 0.0});
    Point2 moved = f.fwd(Point2{base.x + v.x, base.y + v.y});
    CHECK(std::abs(moved.x - w.x) < 1e-12);
    CHECK(std::abs(moved.y - w.y) < 1e-12);
  }
}

TEST_CASE("normalize_and_extract picks the leading tangency points") {
  NormalizedSequence n = normalize_and_extract(parabola_tangents(2400), 6, kRes);
  REQUIRE(n.picked.size() == 6);
  for (size_t i = 0; i < 6; ++i) CHECK(n.picked[i] == i);
  CHECK(!n.on_axis);
  REQUIRE(n.pts.size() == 6);
  for (size_t i = 0; i < 6; ++i) {
    double x = 1.0 / (i + 1.0);
    CHECK(n.pts[i].x == doctest::Approx(x).epsilon(1e-12));
    CHECK(n.pts[i].y == doctest::Approx(x * x).epsilon(1e-12));
    CHECK(n.slopes[i] == doctest::Approx(2.0 * x).epsilon(1e-9));
  }
}

TEST_CASE("normalize_and_extract enforces the convergence hypothesis") {
  // Entry directions stay 45 degrees off the marked line: not convergent
  // in the required sense.
  DirectionSequence bad;
  for (int k = 1; k <= 40; ++k)
    bad.entries.push_back({{1.0 / ((2 * k + 1) * kPi), 0.0}, ProjDir{kPi / 4}});
  bad.limit_point = {0.0, 0.0};
  bad.limit_dir = ProjDir{0.0};
  CHECK_THROWS_AS(normalize_and_extract(bad, 4, kRes), NotConvergentError);

  CHECK_THROWS_AS(normalize_and_extract(parabola_tangents(2400), 2401, kRes),
                  InsufficientPointsError);
}

TEST_CASE("normalize_and_extract handles sequences on the line itself") {
  NormalizedSequence n = normalize_and_extract(on_axis_sequence(100), 5, kRes);
  CHECK(n.on_axis);
  REQUIRE(n.pts.size() == 5);
  for (size_t i = 0; i < 5; ++i) {
    CHECK(n.pts[i].y == 0.0);
    CHECK(n.picked[i] == i);
  }
}

TEST_CASE("the chart is rigid-motion invariant") {
  DirectionSequence s = parabola_tangents(2400);
  double a = 77.0 * kPi / 180.0;
  Vec2 shift{0.4, -1.1};
  DirectionSequence moved;
  for (const auto& e : s.entries)
    moved.entries.push_back(
        {{std::cos(a) * e.p.x - std::sin(a) * e.p.y + shift.x,
          std::sin(a) * e.p.x + std::cos(a) * e.p.y + shift.y},
         ProjDir{normalize_dir(e.dir.theta + a)}});
  moved.limit_point = {shift.x, shift.y};
  moved.limit_dir = ProjDir{normalize_dir(a)};

  NormalizedSequence n0 = normalize_and_extract(s, 6, kRes);
  NormalizedSequence n1 = normalize_and_extract(moved, 6, kRes);
  REQUIRE(n1.pts.size() == n0.pts.size());
  for (size_t i = 0; i < n0.pts.size(); ++i) {
    CHECK(n1.pts[i].x == doctest::Approx(n0.pts[i].x).epsilon(1e-9));
    CHECK(n1.pts[i].y == doctest::Approx(n0.pts[i].y).epsilon(1e-9));
  }
}

TEST_CASE("GammaSegment endpoint and midpoint identities") {
  GammaSegment g;
  g.xk = 1.0;
  g.yk = 0.9;
  g.mk = 1.7;
  g.xk1 = 0.4;
  g.yk1 = 0.25;
  g.mk1 = 1.1;
  double mid = 0.5 * (g.xk + g.xk1);
  double M = (g.yk - g.yk1) / (g.xk - g.xk1);
  CHECK(g.eval(g.xk) == doctest::Approx(g.yk).epsilon(1e-14));
  CHECK(g.eval(g.xk1) == doctest::Approx(g.yk1).epsilon(1e-14));
  CHECK(g.eval(mid) == doctest::Approx(0.5 * (g.yk + g.yk1)).epsilon(1e-12));
  CHECK(g.deriv(g.xk) == doctest::Approx(g.mk).epsilon(1e-12));
  CHECK(g.deriv(g.xk1) == doctest::Approx(g.mk1).epsilon(1e-12));
  CHECK(g.deriv(mid) == doctest::Approx(2.0 * M).epsilon(1e-12));

  // The analytic derivative matches central differences on both branches.
  for (double t : {0.45, 0.55, 0.69, 0.71, 0.8, 0.95}) {
    double h = 1e-6;
    double fd = (g.eval(t + h) - g.eval(t - h)) / (2 * h);
    CHECK(g.deriv(t) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("construct_closed_c1 interpolates and closes up") {
  DirectionSequence s = parabola_tangents(2400);
  ClosedCurveResult c = construct_closed_c1(s, 6, kRes);
  CHECK(c.x0 == doctest::Approx(2.0).epsilon(1e-12));
  REQUIRE(c.normalized.picked.size() == 6);

  Verdict v = validate_construction(c, kRes);
  CAPTURE(v.reason);
  CHECK(v.passed());

  // The curve passes through the picked points in original coordinates.
  for (size_t i = 0; i < c.normalized.picked.size(); ++i) {
    Point2 p = s.entries[c.normalized.picked[i]].p;
    double t = nearest_param(c.curve, p, 4096);
    CHECK(dist(c.curve.at(t), p) < 1e-6);
  }

  // Closed-curve wrap: the two ends meet with matching tangents.
  Point2 a = c.curve.at(c.curve.t_min);
  Point2 b = c.curve.at(c.curve.t_max);
  CHECK(dist(a, b) < 1e-9);
  CHECK(c.curve.closed);
  Verdict wrap = c1_surrogate(c.curve, c.curve.t_min, kRes);
  CHECK(wrap.passed());

  // C1 at every junction between pieces.
  for (double t : c.curve.junction_params)
    CHECK(c1_surrogate(c.curve, t, kRes).passed());
}

TEST_CASE("construct_closed_c1 on an on-axis sequence") {
  ClosedCurveResult c = construct_closed_c1(on_axis_sequence(100), 5, kRes);
  Verdict v = validate_construction(c, kRes);
  CAPTURE(v.reason);
  CHECK(v.passed());
}

TEST_CASE("construct_closed_c1 refuses transverse data") {
  DirectionSequence bad;
  for (int k = 1; k <= 40; ++k)
    bad.entries.push_back({{1.0 / ((2 * k + 1) * kPi), 0.0}, ProjDir{kPi / 4}});
  bad.limit_point = {0.0, 0.0};
  bad.limit_dir = ProjDir{0.0};
  CHECK_THROWS_AS(construct_closed_c1(bad, 4, kRes), NotConvergentError);
}

TEST_CASE("validate_construction notices a shrunken frame") {
  ClosedCurveResult c = construct_closed_c1(parabola_tangents(2400), 6, kRes);
  c.y_max -= 0.25;  // the graph now pokes above the required clearance band
  Verdict v = validate_construction(c, kRes);
  CHECK(v.failed());
}

TEST_CASE("construction_to_svg emits a drawing") {
  ClosedCurveResult c = construct_closed_c1(parabola_tangents(2400), 6, kRes);
  std::string svg = construction_to_svg(c, 256);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("path") != std::string::npos);
}
