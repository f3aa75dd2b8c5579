#pragma once

#include <cstddef>
#include <cstdint>

#include "lanekit/geometry.hpp"
#include "lanekit/scene.hpp"

namespace lanekit {

// Generator for small ground-truth scenes with known topology: parallel
// roads running along +x (optionally arced), each carrying lanes_per_road
// lanes split longitudinally into segments chained by successor edges,
// plus pedestrian crossings laid perpendicular across a road.
struct SynthConfig {
  std::size_t roads = 2;
  std::size_t lanes_per_road = 2;
  std::size_t splits_per_lane = 2;
  double curvature_min = 0.0;  // 1/m, magnitude; sign is drawn per road
  double curvature_max = 0.003;
  std::size_t crossings = 1;
  Rect extent{-50.0, 50.0, -25.0, 25.0};
  std::uint64_t seed = 0;
  double lane_width = 3.5;
  std::size_t points_per_segment = 10;

  void validate() const;
};

// Deterministic in cfg.seed. The embedded SD map carries one road element
// per road (the exact road centerline), two sidewalks per road, and one
// crosswalk element per crossing.
SceneFile synth_scene(const SynthConfig& cfg);

// Prediction synthesis with dialled-in error. Per segment, a drop gate and
// a lateral jitter are always drawn (stream layout is independent of the
// probabilities); surviving segments shift by the jitter, clamped to three
// standard deviations, with confidence 1 - |shift| / (3 std). Edge scores
// start from the ground-truth edge set, flip with edge_flip_prob, and are
// pulled off the exact 0/1 values in proportion to edge_flip_prob.
struct DegradeConfig {
  double lateral_std = 0.0;  // meters
  double drop_prob = 0.0;
  double edge_flip_prob = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

SceneFile degrade(const SceneFile& gt, const DegradeConfig& cfg);

}  // namespace lanekit
