#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lanekit/geometry.hpp"
#include "lanekit/lane.hpp"

namespace lanekit {

struct SceneFile;

// Symmetric chamfer distance: mean nearest-neighbour distance averaged over
// both directions. Both point sets must be non-empty.
double chamfer_distance(const std::vector<Point2>& a, const std::vector<Point2>& b);

// Discrete Frechet distance between two point sequences (order matters).
double discrete_frechet(const std::vector<Point2>& a, const std::vector<Point2>& b);

// Distance between two lane segments: average of the chamfer distance over
// the pooled boundary points (left then right) and the discrete Frechet
// distance between the centerlines.
double lane_seg_distance(const LaneSegment& a, const LaneSegment& b);

struct MatchResult {
  double ap = 0.0;
  // Indexed by prediction position in the input order.
  std::vector<std::optional<std::size_t>> pred_to_gt;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
};

// Greedy matching in descending confidence order (ties broken by lower id):
// each prediction claims the nearest unmatched ground-truth entry within
// `threshold` (ties broken by lower ground-truth index). AP is the
// all-point interpolated area under the precision/recall curve. With no
// ground truth, AP is 1 when there are also no predictions and 0 otherwise.
// `dist` is indexed [prediction][ground truth].
MatchResult match_and_ap(const std::vector<std::vector<double>>& dist,
                         const std::vector<double>& confidence,
                         const std::vector<std::int64_t>& pred_ids, std::size_t gt_count,
                         double threshold);

struct TopScore {
  bool available = false;
  double value = 0.0;
};

// Graph connectivity score. For every ground-truth vertex with at least one
// successor, candidates (all other matched predictions, projected to their
// ground-truth vertices) are ranked by predicted edge score, descending,
// with ties broken by ascending ground-truth index. The vertex score is the
// mean precision at the rank of each true successor; vertices whose match is
// missing score 0. The result averages over vertices with successors and is
// unavailable when no vertex has any.
TopScore top_score(const EdgeSet& gt_edges, std::size_t gt_count, const ScoreMatrix& pred_scores,
                   const std::vector<std::optional<std::size_t>>& pred_to_gt);

struct ThresholdStats {
  double threshold = 0.0;
  double ap = 0.0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
};

struct ClassEval {
  std::vector<ThresholdStats> per_threshold;
  double ap = 0.0;  // mean over thresholds
};

struct EvalConfig {
  std::vector<double> lane_thresholds{1.0, 2.0, 3.0};
  std::vector<double> ped_thresholds{0.5, 1.0, 1.5};
};

struct MetricsReport {
  ClassEval lanes;
  ClassEval peds;
  double map = 0.0;  // mean of the two class APs
  TopScore top;      // connectivity, matched at the middle lane threshold
};

// Compares a predicted scene against ground truth. The ground-truth scene
// must carry an edge set; a predicted edge set is promoted to unit scores.
MetricsReport evaluate(const SceneFile& pred, const SceneFile& gt, const EvalConfig& cfg = {});

}  // namespace lanekit
