#include "lanekit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lanekit/rng.hpp"

namespace lanekit {

namespace {

// Constant-curvature path starting at `origin` heading +x. Arc length s maps
// to position and heading; kappa == 0 degenerates to a straight line.
struct RoadPath {
  Point2 origin;
  double kappa = 0.0;

  Point2 at(double s) const {
    if (std::abs(kappa) < 1e-12) return {origin.x + s, origin.y};
    return {origin.x + std::sin(kappa * s) / kappa,
            origin.y + (1.0 - std::cos(kappa * s)) / kappa};
  }
  double heading(double s) const { return kappa * s; }
  Point2 normal(double s) const {
    const double h = heading(s);
    return {-std::sin(h), std::cos(h)};
  }
  Point2 offset_at(double s, double lateral) const { return at(s) + lateral * normal(s); }
};

constexpr double kSidewalkGap = 2.0;
constexpr double kCrossingHalfWidth = 1.5;
constexpr double kCrossingMargin = 1.0;

}  // namespace

void SynthConfig::validate() const {
  if (!extent.well_ordered()) throw std::invalid_argument("synth extent is not well ordered");
  if (lane_width <= 0.0 || !std::isfinite(lane_width)) {
    throw std::invalid_argument("lane width must be positive");
  }
  if (points_per_segment < 2) {
    throw std::invalid_argument("segments need at least 2 points");
  }
  if (splits_per_lane < 1) throw std::invalid_argument("splits per lane must be at least 1");
  if (!(curvature_min >= 0.0) || !(curvature_max >= curvature_min) ||
      !std::isfinite(curvature_max)) {
    throw std::invalid_argument("curvature range must satisfy 0 <= min <= max");
  }
  const double stack = static_cast<double>(roads * lanes_per_road) * lane_width;
  if (stack > extent.width_y()) {
    throw std::invalid_argument("lanes exceed extent: road stack of " + std::to_string(stack) +
                                " m does not fit " + std::to_string(extent.width_y()) + " m");
  }
}

SceneFile synth_scene(const SynthConfig& cfg) {
  cfg.validate();
  DeterministicRng rng(cfg.seed);

  SceneFile scene;
  scene.scene_id = "synth-" + std::to_string(cfg.seed);
  scene.extent = cfg.extent;
  scene.topology = EdgeSet{};
  SdMapLocal sd;
  sd.range = Rect{2.0 * cfg.extent.x_min, 2.0 * cfg.extent.x_max, 2.0 * cfg.extent.y_min,
                  2.0 * cfg.extent.y_max};

  const double length = cfg.extent.width_x();
  const double block = static_cast<double>(cfg.lanes_per_road) * cfg.lane_width;
  const double y_center = 0.5 * (cfg.extent.y_min + cfg.extent.y_max);
  const double stack = static_cast<double>(cfg.roads) * block;

  std::vector<RoadPath> paths;
  for (std::size_t r = 0; r < cfg.roads; ++r) {
    const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    const double kappa = sign * rng.uniform(cfg.curvature_min, cfg.curvature_max);
    const double road_y = y_center - 0.5 * stack + block * (static_cast<double>(r) + 0.5);
    paths.push_back({{cfg.extent.x_min, road_y}, kappa});
  }

  EdgeSet edges;
  std::int64_t next_id = 0;
  for (std::size_t r = 0; r < cfg.roads; ++r) {
    const RoadPath& path = paths[r];
    for (std::size_t l = 0; l < cfg.lanes_per_road; ++l) {
      const double lateral =
          (static_cast<double>(l) - 0.5 * static_cast<double>(cfg.lanes_per_road - 1)) *
          cfg.lane_width;
      const LineType left_type =
          (l + 1 == cfg.lanes_per_road) ? LineType::kSolid : LineType::kDashed;
      const LineType right_type = (l == 0) ? LineType::kSolid : LineType::kDashed;

      std::size_t prev_index = 0;
      for (std::size_t k = 0; k < cfg.splits_per_lane; ++k) {
        const double s0 = length * static_cast<double>(k) / static_cast<double>(cfg.splits_per_lane);
        const double s1 =
            length * static_cast<double>(k + 1) / static_cast<double>(cfg.splits_per_lane);
        std::vector<Point2> center, left, right;
        for (std::size_t p = 0; p < cfg.points_per_segment; ++p) {
          const double t =
              static_cast<double>(p) / static_cast<double>(cfg.points_per_segment - 1);
          // Shared split positions: s is an exact function of (k, p), so the
          // last point of one split equals the first point of the next.
          const double s = s0 + (s1 - s0) * t;
          center.push_back(path.offset_at(s, lateral));
          left.push_back(path.offset_at(s, lateral + 0.5 * cfg.lane_width));
          right.push_back(path.offset_at(s, lateral - 0.5 * cfg.lane_width));
        }
        LaneSegment seg(next_id, Polyline(std::move(center)), Polyline(std::move(left)),
                        Polyline(std::move(right)), left_type, right_type, 1.0);
        const std::size_t index = scene.segments.size();
        scene.segments.push_back({SegmentCategory::kLane, std::move(seg), {}});
        if (k > 0) edges.emplace_back(prev_index, index);
        prev_index = index;
        ++next_id;
      }
    }
  }

  for (std::size_t r = 0; r < cfg.roads; ++r) {
    std::vector<Point2> pts;
    const std::size_t samples = cfg.splits_per_lane * (cfg.points_per_segment - 1) + 1;
    for (std::size_t p = 0; p < samples; ++p) {
      const double s = length * static_cast<double>(p) / static_cast<double>(samples - 1);
      pts.push_back(paths[r].at(s));
    }
    sd.elements.push_back({SdCategory::kRoad, Polyline(pts)});
    for (const double side : {1.0, -1.0}) {
      std::vector<Point2> walk;
      for (std::size_t p = 0; p < samples; ++p) {
        const double s = length * static_cast<double>(p) / static_cast<double>(samples - 1);
        walk.push_back(paths[r].offset_at(s, side * (0.5 * block + kSidewalkGap)));
      }
      sd.elements.push_back({SdCategory::kSidewalk, Polyline(std::move(walk))});
    }
  }

  for (std::size_t c = 0; c < cfg.crossings; ++c) {
    const std::size_t road = cfg.roads > 0 ? static_cast<std::size_t>(rng.below(cfg.roads)) : 0;
    const double s = length * rng.uniform(0.15, 0.85);
    const Point2 at = cfg.roads > 0 ? paths[road].at(s) : Point2{cfg.extent.x_min + s, y_center};
    const double heading = cfg.roads > 0 ? paths[road].heading(s) : 0.0;
    const Point2 tangent{std::cos(heading), std::sin(heading)};
    const Point2 normal{-tangent.y, tangent.x};
    const double half_span = 0.5 * block + kCrossingMargin;

    std::vector<Point2> center, left, right;
    for (std::size_t p = 0; p < cfg.points_per_segment; ++p) {
      const double t =
          2.0 * static_cast<double>(p) / static_cast<double>(cfg.points_per_segment - 1) - 1.0;
      const Point2 base = at + (t * half_span) * normal;
      center.push_back(base);
      left.push_back(base - kCrossingHalfWidth * tangent);
      right.push_back(base + kCrossingHalfWidth * tangent);
    }
    LaneSegment seg(next_id, Polyline(std::move(center)), Polyline(std::move(left)),
                    Polyline(std::move(right)), LineType::kNonVisible, LineType::kNonVisible,
                    1.0);
    scene.segments.push_back({SegmentCategory::kPedestrianCrossing, std::move(seg), {}});
    ++next_id;

    sd.elements.push_back(
        {SdCategory::kCrosswalk,
         Polyline({at - half_span * normal, at + half_span * normal})});
  }

  scene.topology = std::move(edges);
  scene.sd_map = std::move(sd);
  scene.sd_element_extra.assign(scene.sd_map->elements.size(), nlohmann::json::object());
  return scene;
}

void DegradeConfig::validate() const {
  if (!(lateral_std >= 0.0) || !std::isfinite(lateral_std)) {
    throw std::invalid_argument("lateral std must be finite and non-negative");
  }
  const auto is_prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!is_prob(drop_prob) || !is_prob(edge_flip_prob)) {
    throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
}

SceneFile degrade(const SceneFile& gt, const DegradeConfig& cfg) {
  cfg.validate();
  if (!gt.has_edge_set()) {
    throw std::invalid_argument("degrade expects ground truth with an edge set");
  }
  DeterministicRng rng(cfg.seed);

  SceneFile pred = gt;
  pred.segments.clear();

  constexpr std::size_t kDropped = static_cast<std::size_t>(-1);
  std::vector<std::size_t> remap(gt.segments.size(), kDropped);
  for (std::size_t i = 0; i < gt.segments.size(); ++i) {
    const double gate = rng.uniform01();
    const double jitter = rng.normal(0.0, cfg.lateral_std);
    if (gate < cfg.drop_prob) continue;

    const LaneSegment& seg = gt.segments[i].segment;
    double shift = 0.0;
    double confidence = 1.0;
    if (cfg.lateral_std > 0.0) {
      const double limit = 3.0 * cfg.lateral_std;
      shift = std::clamp(jitter, -limit, limit);
      confidence = 1.0 - std::abs(shift) / limit;
    }
    const Point2 a = seg.centerline().front();
    const Point2 b = seg.centerline().back();
    const double len = distance(a, b);
    // Degenerate loops keep their geometry; jitter needs a chord direction.
    const Point2 normal = len > 0.0 ? Point2{-(b.y - a.y) / len, (b.x - a.x) / len} : Point2{0, 0};
    const RigidTransform move{0.0, shift * normal};

    remap[i] = pred.segments.size();
    pred.segments.push_back(
        {gt.segments[i].category, seg.transformed(move).with_confidence(confidence),
         gt.segments[i].extra});
  }

  const std::size_t n = pred.segments.size();
  ScoreMatrix scores = ScoreMatrix::zeros(n);
  for (const auto& [from, to] : gt.edge_set()) {
    if (remap[from] != kDropped && remap[to] != kDropped) {
      scores.at(remap[from], remap[to]) = 1.0;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double flip = rng.uniform01();
      const double pull = rng.uniform01();
      double s = scores.at(i, j);
      if (flip < cfg.edge_flip_prob) s = 1.0 - s;
      s += (s == 0.0 ? 1.0 : -1.0) * 0.3 * cfg.edge_flip_prob * pull;
      scores.at(i, j) = s;
    }
  }
  pred.topology = std::move(scores);
  return pred;
}

}  // namespace lanekit
