#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lanekit/canvas.hpp"
#include "lanekit/geometry.hpp"
#include "lanekit/sd_map.hpp"

// Reference implementations kept deliberately naive and structurally
// different from the library code. They re-derive the documented semantics;
// tests compare the two.
namespace oracles {

// Top-down recursion with memoization instead of the bottom-up table.
double frechet_recursive(const std::vector<lanekit::Point2>& a,
                         const std::vector<lanekit::Point2>& b);

// Brute-force symmetric chamfer; accumulates in reverse order.
double chamfer_brute(const std::vector<lanekit::Point2>& a,
                     const std::vector<lanekit::Point2>& b);

struct ApOracleResult {
  double ap = 0.0;
  std::size_t tp = 0, fp = 0, fn = 0;
};

// Exhaustive PR-curve evaluation: ranking by repeated selection of the best
// remaining prediction, matching re-derived per rank, interpolated precision
// by a linear scan over later ranks.
ApOracleResult ap_exhaustive(const std::vector<std::vector<double>>& dist,
                             const std::vector<double>& confidence,
                             const std::vector<std::int64_t>& ids, std::size_t gt_count,
                             double threshold);

// One mask channel computed pixel by pixel against every segment of the
// category (no bounding boxes, no early exits).
std::vector<float> mask_per_pixel(const lanekit::SdMapLocal& map,
                                  const lanekit::CanvasConfig& cfg, lanekit::SdCategory category,
                                  double width);

// Direction channels computed pixel by pixel over all road segments.
std::pair<std::vector<float>, std::vector<float>> direction_per_pixel(
    const lanekit::SdMapLocal& map, const lanekit::CanvasConfig& cfg);

}  // namespace oracles
