#include <cmath>
#include <limits>

#include "doctest.h"
#include "lanekit/geometry.hpp"

using namespace lanekit;

TEST_CASE("polyline construction validates its points") {
  CHECK_THROWS_AS(Polyline({{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Polyline({{0, 0}, {0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Polyline({{0, 0}, {1, 0}, {1, 0}}), std::invalid_argument);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Polyline({{0, 0}, {nan, 1}}), std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Polyline({{0, 0}, {inf, 1}}), std::invalid_argument);
  CHECK_NOTHROW(Polyline({{0, 0}, {1e-8, 0}}));
}

TEST_CASE("polyline length and cumulative lengths") {
  const Polyline p({{0, 0}, {3, 4}, {3, 14}});
  CHECK(p.length() == doctest::Approx(15.0));
  const auto cum = p.cumulative_lengths();
  REQUIRE(cum.size() == 3);
  CHECK(cum[0] == 0.0);
  CHECK(cum[1] == doctest::Approx(5.0));
  CHECK(cum[2] == doctest::Approx(15.0));
}

TEST_CASE("polyline reversal and rigid transforms") {
  const Polyline p({{0, 0}, {1, 0}, {1, 2}});
  const Polyline r = p.reversed();
  CHECK(r[0] == Point2{1, 2});
  CHECK(r[2] == Point2{0, 0});

  const RigidTransform quarter{M_PI / 2.0, {10, 0}};
  const Point2 moved = quarter.apply({1, 0});
  CHECK(moved.x == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(moved.y == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(RigidTransform{}.is_identity());
  CHECK_FALSE(quarter.is_identity());
  // identity transform keeps coordinates bit-identical
  const Polyline same = p.transformed(RigidTransform{});
  CHECK(same[1] == p[1]);
}

TEST_CASE("resampling spaces points evenly and pins the endpoints") {
  const Polyline line({{0, 0}, {10, 0}});
  const Polyline r = resample_polyline(line, 5);
  REQUIRE(r.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(r[i].x == doctest::Approx(2.5 * static_cast<double>(i)));
    CHECK(r[i].y == 0.0);
  }

  // uneven input spacing does not move the targets
  const Polyline uneven({{0, 0}, {1, 0}, {10, 0}});
  const Polyline r2 = resample_polyline(uneven, 6);
  REQUIRE(r2.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(r2[i].x == doctest::Approx(2.0 * static_cast<double>(i)));
  }

  const Polyline bent({{0, 0}, {4, 3}, {8, -1}});
  const Polyline r3 = resample_polyline(bent, 7);
  CHECK(r3.front() == bent.front());
  CHECK(r3.back() == bent.back());
  // equal arc steps along the chain
  for (std::size_t i = 1; i < r3.size(); ++i) {
    CHECK(distance(r3[i - 1], r3[i]) == doctest::Approx(bent.length() / 6.0).epsilon(1e-9));
  }

  CHECK_THROWS_AS(resample_polyline(line, 1), std::invalid_argument);
}

TEST_CASE("point-to-segment distance clamps to the endpoints") {
  CHECK(point_segment_squared_distance({0, 1}, {0, 0}, {2, 0}) == doctest::Approx(1.0));
  CHECK(point_segment_squared_distance({-3, 4}, {0, 0}, {2, 0}) == doctest::Approx(25.0));
  CHECK(point_segment_squared_distance({5, 4}, {0, 0}, {2, 0}) == doctest::Approx(25.0));
  // degenerate segment behaves like a point
  CHECK(point_segment_squared_distance({3, 4}, {0, 0}, {0, 0}) == doctest::Approx(25.0));
  CHECK(point_segment_distance({0, 2}, {0, 0}, {2, 0}) == doctest::Approx(2.0));
}

TEST_CASE("segment clipping against a rectangle") {
  const Rect r{-1.0, 1.0, -1.0, 1.0};

  SUBCASE("inside segments pass through unchanged") {
    const auto c = clip_segment({-0.5, 0.0}, {0.5, 0.5}, r);
    REQUIRE(c.has_value());
    CHECK(c->first == Point2{-0.5, 0.0});
    CHECK(c->second == Point2{0.5, 0.5});
  }
  SUBCASE("fully outside on one side is rejected") {
    CHECK_FALSE(clip_segment({2, -5}, {2, 5}, r).has_value());
    CHECK_FALSE(clip_segment({-3, 2}, {3, 2}, r).has_value());
  }
  SUBCASE("crossing segments are cut at the border") {
    const auto c = clip_segment({-2, 0}, {2, 0}, r);
    REQUIRE(c.has_value());
    CHECK(c->first == Point2{-1, 0});
    CHECK(c->second == Point2{1, 0});
  }
  SUBCASE("order of the endpoints is preserved") {
    const auto c = clip_segment({2, 0}, {-2, 0}, r);
    REQUIRE(c.has_value());
    CHECK(c->first == Point2{1, 0});
    CHECK(c->second == Point2{-1, 0});
  }
  SUBCASE("diagonal through a corner") {
    const auto c = clip_segment({-2, -2}, {2, 2}, r);
    REQUIRE(c.has_value());
    CHECK(c->first == Point2{-1, -1});
    CHECK(c->second == Point2{1, 1});
  }
  SUBCASE("diagonal missing the rectangle") {
    CHECK_FALSE(clip_segment({-2, 0.5}, {0.5, 3}, r).has_value());
  }
}

TEST_CASE("rect helpers") {
  const Rect r{-2.0, 4.0, -1.0, 1.0};
  CHECK(r.well_ordered());
  CHECK(r.width_x() == 6.0);
  CHECK(r.width_y() == 2.0);
  CHECK(r.contains({0, 0}));
  CHECK(r.contains({4, 1}));
  CHECK_FALSE(r.contains({4.01, 0}));
  CHECK_FALSE(Rect{1.0, 1.0, 0.0, 2.0}.well_ordered());
}
