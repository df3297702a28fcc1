#include <cmath>

#include "doctest.h"

#include "c1homeo/errors.hpp"
#include "c1homeo/sequences.hpp"

using namespace c1homeo;

namespace {

constexpr double kPi = 3.14159265358979323846;
const ResolutionParams kRes{};

// Points on the x-axis at radii 1/((2k+1)pi), entry directions offset from
// the axis by a fixed angle.
DirectionSequence axis_sequence(int count, double dir_offset) {
  DirectionSequence s;
  for (int k = 1; k <= count; ++k)
    s.entries.push_back({{1.0 / ((2 * k + 1) * kPi), 0.0},
                         ProjDir{normalize_dir(dir_offset)}});
  s.limit_point = {0.0, 0.0};
  s.limit_dir = ProjDir{0.0};
  return s;
}

DirectionSequence transformed(const DirectionSequence& s, double deg, Vec2 shift) {
  double a = deg * kPi / 180.0;
  auto mov = [&](Point2 p) {
    return Point2{std::cos(a) * p.x - std::sin(a) * p.y + shift.x,
                  std::sin(a) * p.x + std::cos(a) * p.y + shift.y};
  };
  DirectionSequence out;
  for (const auto& e : s.entries)
    out.entries.push_back({mov(e.p), ProjDir{normalize_dir(e.dir.theta + a)}});
  out.limit_point = mov(s.limit_point);
  out.limit_dir = ProjDir{normalize_dir(s.limit_dir.theta + a)};
  return out;
}

}  // namespace

TEST_CASE("converges_along_line accepts on-line decay and rejects zigzag") {
  CHECK(converges_along_line(axis_sequence(40, kPi / 4), kRes).passed());

  DirectionSequence zig;
  for (int n = 1; n <= 60; ++n)
    zig.entries.push_back({{1.0 / n, (n % 2 ? 1.0 : -1.0) / n}, ProjDir{0.0}});
  zig.limit_point = {0.0, 0.0};
  zig.limit_dir = ProjDir{0.0};
  Verdict v = converges_along_line(zig, kRes);
  CHECK(v.failed());
  CHECK(v.residuals.at("tail_gap") == doctest::Approx(kPi / 4));
  CHECK(v.witness.has_value());
}

TEST_CASE("too few usable entries is degenerate, not a failure") {
  CHECK_THROWS_AS(converges_along_line(axis_sequence(10, kPi / 4), kRes),
                  DegenerateSequenceError);
  // Entries sitting on the limit point are unusable.
  DirectionSequence s = axis_sequence(45, kPi / 4);
  for (int i = 0; i < 10; ++i) s.entries[i].p = s.limit_point;
  CHECK_THROWS_AS(converges_along_line(s, kRes), DegenerateSequenceError);
}

TEST_CASE("sandwich agrees with the chord test on a straddled sequence") {
  DirectionSequence s = axis_sequence(40, kPi / 2);
  ParamCurve lower = line_through({0.0, 0.0}, ProjDir{normalize_dir(-0.15)});
  ParamCurve upper = line_through({0.0, 0.0}, ProjDir{0.15});
  Verdict v = converges_along_line_sandwich(s, lower, 0.0, upper, 0.0, kRes);
  CHECK(v.passed());
  CHECK(v.residuals.at("min_clearance") > 0.0);
}

TEST_CASE("sandwich rejects witnesses on one side of the line") {
  DirectionSequence s = axis_sequence(40, kPi / 2);
  ParamCurve lower = line_through({0.0, 0.0}, ProjDir{0.1});
  ParamCurve upper = line_through({0.0, 0.0}, ProjDir{0.2});
  CHECK_THROWS_AS(
      converges_along_line_sandwich(s, lower, 0.0, upper, 0.0, kRes),
      BadSandwichError);
  // And witnesses that miss the limit point entirely.
  ParamCurve off = line_through({0.3, 0.0}, ProjDir{0.15});
  CHECK_THROWS_AS(
      converges_along_line_sandwich(s, line_through({0.0, 0.0}, ProjDir{normalize_dir(-0.15)}),
                                    0.0, off, 0.0, kRes),
      BadSandwichError);
}

TEST_CASE("sandwich fails a diagonal sequence against axis witnesses") {
  DirectionSequence diag;
  for (int n = 1; n <= 60; ++n)
    diag.entries.push_back({{1.0 / n, 1.0 / n}, ProjDir{0.0}});
  diag.limit_point = {0.0, 0.0};
  diag.limit_dir = ProjDir{0.0};
  ParamCurve lower = line_through({0.0, 0.0}, ProjDir{normalize_dir(-0.15)});
  ParamCurve upper = line_through({0.0, 0.0}, ProjDir{0.15});
  Verdict v = converges_along_line_sandwich(diag, lower, 0.0, upper, 0.0, kRes);
  CHECK(v.failed());
  CHECK(v.witness.has_value());
}

TEST_CASE("is_transverse needs a uniform angular gap on the tail") {
  CHECK(is_transverse(axis_sequence(40, kPi / 4), kRes).passed());

  // Entry directions on the line itself: convergent but not transverse.
  Verdict flat = is_transverse(axis_sequence(40, 0.0), kRes);
  CHECK(flat.failed());
  CHECK(flat.reason.empty());
  CHECK(flat.residuals.at("min_dir_gap") == 0.0);

  // Directions closing in on the line drop under the tolerance eventually.
  DirectionSequence closing;
  for (int k = 1; k <= 1200; ++k)
    closing.entries.push_back(
        {{1.0 / k, 0.0}, dir_from_slope(1.0 / k)});
  closing.limit_point = {0.0, 0.0};
  closing.limit_dir = ProjDir{0.0};
  Verdict v = is_transverse(closing, kRes);
  CHECK(v.failed());
  CHECK(v.residuals.at("min_dir_gap") < kRes.dir_tolerance);

  // A tail mixing gaps on both sides of the tolerance is flagged MIXED.
  DirectionSequence mixed = axis_sequence(40, 0.0);
  for (size_t i = 0; i < mixed.entries.size(); i += 2)
    mixed.entries[i].dir = ProjDir{kPi / 2};
  Verdict m = is_transverse(mixed, kRes);
  CHECK(m.failed());
  CHECK(m.reason == "MIXED");

  // Divergent chords fail before directions are even considered.
  DirectionSequence zig;
  for (int n = 1; n <= 60; ++n)
    zig.entries.push_back({{1.0 / n, (n % 2 ? 1.0 : -1.0) / n}, ProjDir{kPi / 4}});
  zig.limit_point = {0.0, 0.0};
  zig.limit_dir = ProjDir{0.0};
  Verdict z = is_transverse(zig, kRes);
  CHECK(z.failed());
  CHECK(z.reason == "NOT_CONVERGENT_ALONG_LINE");
}

TEST_CASE("verdicts only depend on the tail and are rigid-motion invariant") {
  DirectionSequence longer = axis_sequence(80, kPi / 4);
  DirectionSequence tail;
  tail.entries.assign(longer.entries.end() - 40, longer.entries.end());
  tail.limit_point = longer.limit_point;
  tail.limit_dir = longer.limit_dir;
  Verdict a = is_transverse(longer, kRes);
  Verdict b = is_transverse(tail, kRes);
  CHECK(a.passed());
  CHECK(b.passed());
  CHECK(a.residuals.at("min_dir_gap") == b.residuals.at("min_dir_gap"));

  Verdict c = is_transverse(transformed(longer, 33.0, {1.2, -0.7}), kRes);
  CHECK(c.passed());
  CHECK(c.residuals.at("min_dir_gap") ==
        doctest::Approx(a.residuals.at("min_dir_gap")).epsilon(1e-9));
}

TEST_CASE("pushforward under the identity changes nothing") {
  DirectionSequence s = axis_sequence(40, kPi / 4);
  DirectionSequence out = pushforward_sequence(identity_map(), s, kRes);
  REQUIRE(out.entries.size() == s.entries.size());
  CHECK(proj_distance(out.limit_dir, s.limit_dir) < 1e-9);
  for (size_t i = 0; i < s.entries.size(); ++i) {
    CHECK(dist(out.entries[i].p, s.entries[i].p) == 0.0);
    CHECK(proj_distance(out.entries[i].dir, s.entries[i].dir) < 1e-9);
  }
}

TEST_CASE("property_c_on_sequence outcomes") {
  DirectionSequence s = axis_sequence(40, kPi / 4);
  CHECK(property_c_on_sequence(identity_map(), s, kRes).passed());
  CHECK(property_c_on_sequence(rotation_map(30.0), s, kRes).passed());

  // Non-transverse input gives no information about the map.
  Verdict v = property_c_on_sequence(identity_map(), axis_sequence(40, 0.0), kRes);
  CHECK(v.status == Status::INCONCLUSIVE);
  CHECK(v.reason == "SEQUENCE_NOT_TRANSVERSE");

  // A missing induced direction along the way is also inconclusive.
  DirectionSequence on_yaxis;
  for (int k = 1; k <= 40; ++k)
    on_yaxis.entries.push_back({{0.0, 1.0 / k}, ProjDir{0.0}});
  on_yaxis.limit_point = {0.0, 0.0};
  on_yaxis.limit_dir = ProjDir{kPi / 2};
  Verdict mt = property_c_on_sequence(corner_shear_map(), on_yaxis, kRes);
  CHECK(mt.status == Status::INCONCLUSIVE);
  CHECK(mt.reason == "MISSING_TANGENT");
}

TEST_CASE("sequence CSV round trip and malformed inputs") {
  DirectionSequence s = axis_sequence(41, kPi / 4);
  s.limit_point = {0.25, -1.5};
  std::string csv = sequence_to_csv(s);
  DirectionSequence back = sequence_from_csv(csv);
  REQUIRE(back.entries.size() == s.entries.size());
  CHECK(back.limit_point.x == s.limit_point.x);
  CHECK(back.limit_point.y == s.limit_point.y);
  CHECK(back.limit_dir.theta == s.limit_dir.theta);
  for (size_t i = 0; i < s.entries.size(); ++i) {
    CHECK(back.entries[i].p.x == s.entries[i].p.x);
    CHECK(back.entries[i].p.y == s.entries[i].p.y);
    CHECK(back.entries[i].dir.theta == s.entries[i].dir.theta);
  }

  CHECK_THROWS_AS(sequence_from_csv("x,y,theta\n1,0,0\n"), GeomError);
  CHECK_THROWS_AS(sequence_from_csv("x,y,theta\n1,0\nlimit,0,0,0\n"), GeomError);
  CHECK_THROWS_AS(sequence_from_csv("x,y,theta\nlimit,0,0,0\n1,0,0\n"), GeomError);
  CHECK_THROWS_AS(sequence_from_csv("x,y,theta\noops,0,0\nlimit,0,0,0\n"), GeomError);
}
