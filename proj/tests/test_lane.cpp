#include <string>

#include "doctest.h"
#include "lanekit/lane.hpp"

using namespace lanekit;

namespace {

LaneSegment straight_lane(std::int64_t id, double y0, double x0 = 0.0, double x1 = 10.0,
                          double conf = 1.0) {
  Polyline c({{x0, y0}, {x1, y0}});
  Polyline l({{x0, y0 + 1}, {x1, y0 + 1}});
  Polyline r({{x0, y0 - 1}, {x1, y0 - 1}});
  return LaneSegment(id, c, l, r, LineType::kDashed, LineType::kSolid, conf);
}

}  // namespace

TEST_CASE("line type names round-trip") {
  for (LineType t : {LineType::kNonVisible, LineType::kSolid, LineType::kDashed}) {
    CHECK(line_type_from_string(to_string(t)) == t);
  }
  CHECK_THROWS_AS(line_type_from_string("double_dashed"), std::invalid_argument);
}

TEST_CASE("lane segment enforces matching point counts and confidence range") {
  Polyline c({{0, 0}, {5, 0}, {10, 0}});
  Polyline l({{0, 1}, {10, 1}});
  Polyline r({{0, -1}, {5, -1}, {10, -1}});
  CHECK_THROWS_WITH_AS(LaneSegment(7, c, l, r, LineType::kSolid, LineType::kSolid),
                       doctest::Contains("lane segment 7"), std::invalid_argument);

  CHECK_THROWS_AS(straight_lane(1, 0.0, 0.0, 10.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(straight_lane(1, 0.0, 0.0, 10.0, -0.1), std::invalid_argument);
  CHECK_NOTHROW(straight_lane(1, 0.0, 0.0, 10.0, 0.0));
}

TEST_CASE("lane segment transforms and confidence updates") {
  const LaneSegment seg = straight_lane(3, 0.0);
  const LaneSegment moved = seg.transformed(RigidTransform{0.0, {0.0, 2.0}});
  CHECK(moved.centerline()[0] == Point2{0, 2});
  CHECK(moved.left_boundary()[0] == Point2{0, 3});
  CHECK(moved.id() == 3);
  CHECK(moved.left_type() == LineType::kDashed);

  const LaneSegment half = seg.with_confidence(0.5);
  CHECK(half.confidence() == 0.5);
  CHECK_THROWS_AS(seg.with_confidence(2.0), std::invalid_argument);
}

TEST_CASE("boundaries reconstruct from per-point offsets") {
  const Polyline c({{0, 0}, {1, 0}, {2, 0}});
  const OffsetVector off{{{0, -1}, {0, -1}, {0, -1}}};
  const auto [left, right] = reconstruct_boundaries(c, off);
  CHECK(left[1] == Point2{1, 1});
  CHECK(right[1] == Point2{1, -1});

  CHECK_THROWS_AS(reconstruct_boundaries(c, OffsetVector{{{0, 1}}}), std::invalid_argument);
}

TEST_CASE("endpoint gap is measured end-to-start") {
  const LaneSegment a = straight_lane(0, 0.0, 0.0, 10.0);
  const LaneSegment b = straight_lane(1, 0.0, 10.0, 20.0);
  CHECK(endpoint_gap(a, b) == 0.0);
  const LaneSegment c = straight_lane(2, 3.0, 14.0, 20.0);
  CHECK(endpoint_gap(a, c) == 5.0);
}

TEST_CASE("graph validation flags errors and gap warnings") {
  LaneGraph g;
  g.segments.push_back(straight_lane(0, 0.0, 0.0, 10.0));
  g.segments.push_back(straight_lane(1, 0.0, 10.0, 20.0));

  SUBCASE("clean chain has no diagnostics") {
    g.topology = EdgeSet{{0, 1}};
    CHECK(validate_graph(g).empty());
  }
  SUBCASE("out-of-range edge is an error") {
    g.topology = EdgeSet{{0, 5}};
    const auto diags = validate_graph(g);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].severity == GraphDiagnostic::Severity::kError);
    CHECK(diags[0].message.find("out of range") != std::string::npos);
  }
  SUBCASE("self-loop is an error") {
    g.topology = EdgeSet{{1, 1}};
    const auto diags = validate_graph(g);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].severity == GraphDiagnostic::Severity::kError);
  }
  SUBCASE("large endpoint gap is a warning") {
    g.topology = EdgeSet{{1, 0}};  // back of 1 is 20 m from front of 0
    const auto diags = validate_graph(g);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].severity == GraphDiagnostic::Severity::kWarning);
    CHECK(validate_graph(g, 25.0).empty());
  }
}

TEST_CASE("graph validation checks score matrices") {
  LaneGraph g;
  g.segments.push_back(straight_lane(0, 0.0, 0.0, 10.0));
  g.segments.push_back(straight_lane(1, 0.0, 10.0, 20.0));

  SUBCASE("shape mismatch is an error") {
    g.topology = ScoreMatrix::zeros(3);
    const auto diags = validate_graph(g);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].severity == GraphDiagnostic::Severity::kError);
  }
  SUBCASE("scores must be probabilities") {
    ScoreMatrix m = ScoreMatrix::zeros(2);
    m.at(0, 1) = 1.25;
    g.topology = m;
    const auto diags = validate_graph(g);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].severity == GraphDiagnostic::Severity::kError);
  }
  SUBCASE("confident long-range scores warn, weak ones do not") {
    ScoreMatrix m = ScoreMatrix::zeros(2);
    m.at(1, 0) = 0.9;  // 20 m gap
    g.topology = m;
    auto diags = validate_graph(g);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].severity == GraphDiagnostic::Severity::kWarning);

    m.at(1, 0) = 0.4;
    g.topology = m;
    CHECK(validate_graph(g).empty());
  }
}
