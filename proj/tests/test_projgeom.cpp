#include <cmath>
#include <random>

#include "doctest.h"

#include "c1homeo/errors.hpp"
#include "c1homeo/projgeom.hpp"

using namespace c1homeo;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("normalize_dir wraps into [0, pi)") {
  CHECK(normalize_dir(0.0) == doctest::Approx(0.0));
  CHECK(normalize_dir(kPi) == doctest::Approx(0.0));
  CHECK(normalize_dir(1.5 * kPi) == doctest::Approx(0.5 * kPi));
  CHECK(normalize_dir(-0.1) == doctest::Approx(kPi - 0.1));
  CHECK(normalize_dir(7.0 * kPi + 0.3) == doctest::Approx(0.3));
}

TEST_CASE("dir/slope conversions") {
  CHECK(dir_from_slope(1.0).theta == doctest::Approx(kPi / 4));
  CHECK(dir_from_slope(0.0).theta == doctest::Approx(0.0));
  CHECK(slope_of_dir(ProjDir{kPi / 4}) == doctest::Approx(1.0));
  CHECK(std::isinf(slope_of_dir(ProjDir{kPi / 2})));
  CHECK(dir_from_slope(std::numeric_limits<double>::infinity()).theta ==
        doctest::Approx(kPi / 2));
}

TEST_CASE("dir_of_vec") {
  CHECK(!dir_of_vec({0.0, 0.0}).has_value());
  CHECK(dir_of_vec({2.0, 2.0})->theta == doctest::Approx(kPi / 4));
  // Antipodal vectors give the same projective direction.
  CHECK(dir_of_vec({-1.0, -1.0})->theta == doctest::Approx(kPi / 4));
  CHECK(dir_of_vec({0.0, -3.0})->theta == doctest::Approx(kPi / 2));
}

TEST_CASE("proj_distance wraps around pi") {
  CHECK(proj_distance(ProjDir{0.1}, ProjDir{kPi - 0.1}) == doctest::Approx(0.2));
  CHECK(proj_distance(ProjDir{0.2}, ProjDir{0.9}) == doctest::Approx(0.7));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(0.0, kPi);
  for (int i = 0; i < 2000; ++i) {
    ProjDir a{U(rng)}, b{U(rng)};
    double d = proj_distance(a, b);
    CHECK(d >= 0.0);
    CHECK(d <= kPi / 2 + 1e-15);
    CHECK(d == doctest::Approx(proj_distance(b, a)));
  }
}

TEST_CASE("cyclic_order on the projective circle") {
  CHECK(cyclic_order(ProjDir{0.1}, ProjDir{1.2}, ProjDir{2.9}) == CyclicOrder::CCW);
  CHECK(cyclic_order(ProjDir{2.9}, ProjDir{1.2}, ProjDir{0.1}) == CyclicOrder::CW);
  // Wraparound triple: still one consistent orientation.
  CHECK(cyclic_order(ProjDir{2.9}, ProjDir{0.2}, ProjDir{1.2}) == CyclicOrder::CCW);
  CHECK(cyclic_order(ProjDir{0.5}, ProjDir{0.5}, ProjDir{1.0}) ==
        CyclicOrder::DEGENERATE);
}

TEST_CASE("mean_dir averages across the wrap") {
  auto m = mean_dir({ProjDir{0.05}, ProjDir{kPi - 0.05}});
  REQUIRE(m.has_value());
  CHECK(std::min(m->theta, kPi - m->theta) == doctest::Approx(0.0).epsilon(1e-12));
  // Perpendicular pair has no mean.
  CHECK(!mean_dir({ProjDir{0.0}, ProjDir{kPi / 2}}).has_value());
}

TEST_CASE("rotate_vec") {
  Vec2 v = rotate_vec({1.0, 0.0}, kPi / 2);
  CHECK(v.x == doctest::Approx(0.0));
  CHECK(v.y == doctest::Approx(1.0));
}

TEST_CASE("resolution validation") {
  ResolutionParams r;
  CHECK_NOTHROW(r.validate());
  r.tail_length = 0;
  CHECK_THROWS_AS(r.validate(), ConstraintViolationError);
  r = ResolutionParams{};
  r.h_grid = {1e-3, 1e-2};  // not decreasing
  CHECK_THROWS_AS(r.validate(), ConstraintViolationError);
  r = ResolutionParams{};
  r.c1_ratio = 1.0;
  CHECK_THROWS_AS(r.validate(), ConstraintViolationError);
}
