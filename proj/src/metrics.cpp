#include "lanekit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lanekit/scene.hpp"

namespace lanekit {

namespace {

double directed_chamfer(const std::vector<Point2>& from, const std::vector<Point2>& to) {
  double sum = 0.0;
  for (const Point2& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& q : to) {
      best = std::min(best, distance(p, q));
    }
    sum += best;
  }
  return sum / static_cast<double>(from.size());
}

}  // namespace

double chamfer_distance(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("chamfer distance needs non-empty point sets");
  }
  return 0.5 * (directed_chamfer(a, b) + directed_chamfer(b, a));
}

double discrete_frechet(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("frechet distance needs non-empty point sequences");
  }
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<double> dp(n * m);
  const auto at = [&dp, m](std::size_t i, std::size_t j) -> double& { return dp[i * m + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = distance(a[i], b[j]);
      if (i == 0 && j == 0) {
        at(i, j) = d;
      } else if (i == 0) {
        at(i, j) = std::max(at(0, j - 1), d);
      } else if (j == 0) {
        at(i, j) = std::max(at(i - 1, 0), d);
      } else {
        const double reach = std::min({at(i - 1, j), at(i, j - 1), at(i - 1, j - 1)});
        at(i, j) = std::max(reach, d);
      }
    }
  }
  return at(n - 1, m - 1);
}

double lane_seg_distance(const LaneSegment& a, const LaneSegment& b) {
  std::vector<Point2> a_bounds = a.left_boundary().points();
  a_bounds.insert(a_bounds.end(), a.right_boundary().points().begin(),
                  a.right_boundary().points().end());
  std::vector<Point2> b_bounds = b.left_boundary().points();
  b_bounds.insert(b_bounds.end(), b.right_boundary().points().begin(),
                  b.right_boundary().points().end());
  const double chamfer = chamfer_distance(a_bounds, b_bounds);
  const double frechet = discrete_frechet(a.centerline().points(), b.centerline().points());
  return 0.5 * (chamfer + frechet);
}

MatchResult match_and_ap(const std::vector<std::vector<double>>& dist,
                         const std::vector<double>& confidence,
                         const std::vector<std::int64_t>& pred_ids, std::size_t gt_count,
                         double threshold) {
  const std::size_t n_pred = dist.size();
  if (confidence.size() != n_pred || pred_ids.size() != n_pred) {
    throw std::invalid_argument("match_and_ap: prediction array sizes disagree");
  }
  for (const std::vector<double>& row : dist) {
    if (row.size() != gt_count) {
      throw std::invalid_argument("match_and_ap: distance row size does not match gt count");
    }
  }

  std::vector<std::size_t> order(n_pred);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (confidence[i] != confidence[j]) return confidence[i] > confidence[j];
    return pred_ids[i] < pred_ids[j];
  });

  MatchResult result;
  result.pred_to_gt.assign(n_pred, std::nullopt);
  std::vector<char> gt_taken(gt_count, 0);
  std::vector<char> is_tp(n_pred, 0);
  for (std::size_t k = 0; k < n_pred; ++k) {
    const std::size_t i = order[k];
    double best_d = std::numeric_limits<double>::infinity();
    std::size_t best_g = gt_count;
    for (std::size_t g = 0; g < gt_count; ++g) {
      if (gt_taken[g]) continue;
      const double d = dist[i][g];
      if (d <= threshold && d < best_d) {
        best_d = d;
        best_g = g;
      }
    }
    if (best_g < gt_count) {
      gt_taken[best_g] = 1;
      result.pred_to_gt[i] = best_g;
      is_tp[k] = 1;
    }
  }

  if (gt_count == 0) {
    result.ap = n_pred == 0 ? 1.0 : 0.0;
    result.false_positives = n_pred;
    return result;
  }

  std::vector<double> precision(n_pred), recall(n_pred);
  std::size_t tp_cum = 0;
  for (std::size_t k = 0; k < n_pred; ++k) {
    tp_cum += is_tp[k] ? 1 : 0;
    precision[k] = static_cast<double>(tp_cum) / static_cast<double>(k + 1);
    recall[k] = static_cast<double>(tp_cum) / static_cast<double>(gt_count);
  }
  // Interpolated precision: running maximum from the right.
  for (std::size_t k = n_pred; k-- > 1;) {
    precision[k - 1] = std::max(precision[k - 1], precision[k]);
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t k = 0; k < n_pred; ++k) {
    ap += (recall[k] - prev_recall) * precision[k];
    prev_recall = recall[k];
  }

  result.ap = ap;
  result.true_positives = tp_cum;
  result.false_positives = n_pred - tp_cum;
  result.false_negatives = gt_count - tp_cum;
  return result;
}

TopScore top_score(const EdgeSet& gt_edges, std::size_t gt_count, const ScoreMatrix& pred_scores,
                   const std::vector<std::optional<std::size_t>>& pred_to_gt) {
  if (pred_scores.n != pred_to_gt.size()) {
    throw std::invalid_argument("top_score: score matrix size does not match prediction count");
  }
  std::vector<char> adj(gt_count * gt_count, 0);
  for (const auto& [from, to] : gt_edges) {
    if (from >= gt_count || to >= gt_count) {
      throw std::invalid_argument("top_score: edge endpoint out of range");
    }
    adj[from * gt_count + to] = 1;
  }

  std::vector<std::optional<std::size_t>> gt_to_pred(gt_count);
  for (std::size_t i = 0; i < pred_to_gt.size(); ++i) {
    if (!pred_to_gt[i]) continue;
    const std::size_t g = *pred_to_gt[i];
    if (g >= gt_count) throw std::invalid_argument("top_score: match index out of range");
    if (gt_to_pred[g]) throw std::invalid_argument("top_score: two predictions match one vertex");
    gt_to_pred[g] = i;
  }
  std::vector<std::size_t> matched;
  for (std::size_t g = 0; g < gt_count; ++g) {
    if (gt_to_pred[g]) matched.push_back(g);
  }

  double total = 0.0;
  std::size_t vertices = 0;
  for (std::size_t v = 0; v < gt_count; ++v) {
    std::size_t n_succ = 0;
    for (std::size_t u = 0; u < gt_count; ++u) n_succ += adj[v * gt_count + u];
    if (n_succ == 0) continue;
    ++vertices;
    if (!gt_to_pred[v]) continue;
    const std::size_t pv = *gt_to_pred[v];

    std::vector<std::size_t> candidates;
    candidates.reserve(matched.size());
    for (const std::size_t u : matched) {
      if (u != v) candidates.push_back(u);
    }
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t u1, std::size_t u2) {
      const double s1 = pred_scores.at(pv, *gt_to_pred[u1]);
      const double s2 = pred_scores.at(pv, *gt_to_pred[u2]);
      if (s1 != s2) return s1 > s2;
      return u1 < u2;
    });

    std::size_t hits = 0;
    double acc = 0.0;
    for (std::size_t rank = 0; rank < candidates.size(); ++rank) {
      if (adj[v * gt_count + candidates[rank]]) {
        ++hits;
        acc += static_cast<double>(hits) / static_cast<double>(rank + 1);
      }
    }
    total += acc / static_cast<double>(n_succ);
  }

  TopScore score;
  if (vertices == 0) return score;
  score.available = true;
  score.value = total / static_cast<double>(vertices);
  return score;
}

namespace {

struct ClassView {
  std::vector<std::size_t> indices;  // into the scene segment list
  std::vector<double> confidence;
  std::vector<std::int64_t> ids;
};

ClassView select_class(const SceneFile& scene, SegmentCategory category) {
  ClassView view;
  for (std::size_t i = 0; i < scene.segments.size(); ++i) {
    if (scene.segments[i].category != category) continue;
    view.indices.push_back(i);
    view.confidence.push_back(scene.segments[i].segment.confidence());
    view.ids.push_back(scene.segments[i].segment.id());
  }
  return view;
}

std::vector<std::vector<double>> distance_matrix(const SceneFile& pred, const ClassView& pv,
                                                 const SceneFile& gt, const ClassView& gv) {
  std::vector<std::vector<double>> dist(pv.indices.size(),
                                        std::vector<double>(gv.indices.size()));
  for (std::size_t i = 0; i < pv.indices.size(); ++i) {
    for (std::size_t j = 0; j < gv.indices.size(); ++j) {
      dist[i][j] = lane_seg_distance(pred.segments[pv.indices[i]].segment,
                                     gt.segments[gv.indices[j]].segment);
    }
  }
  return dist;
}

ClassEval evaluate_class(const std::vector<std::vector<double>>& dist, const ClassView& pv,
                         std::size_t gt_count, const std::vector<double>& thresholds) {
  ClassEval eval;
  for (const double t : thresholds) {
    const MatchResult r = match_and_ap(dist, pv.confidence, pv.ids, gt_count, t);
    eval.per_threshold.push_back(
        {t, r.ap, r.true_positives, r.false_positives, r.false_negatives});
    eval.ap += r.ap;
  }
  eval.ap /= static_cast<double>(thresholds.size());
  return eval;
}

ScoreMatrix prediction_scores(const SceneFile& pred) {
  if (pred.has_edge_set()) {
    ScoreMatrix scores = ScoreMatrix::zeros(pred.segments.size());
    for (const auto& [from, to] : pred.edge_set()) {
      scores.at(from, to) = 1.0;
    }
    return scores;
  }
  const ScoreMatrix& scores = pred.score_matrix();
  if (scores.n != pred.segments.size()) {
    throw std::invalid_argument("predicted score matrix does not cover every segment");
  }
  return scores;
}

}  // namespace

MetricsReport evaluate(const SceneFile& pred, const SceneFile& gt, const EvalConfig& cfg) {
  if (cfg.lane_thresholds.empty() || cfg.ped_thresholds.empty()) {
    throw std::invalid_argument("evaluation needs at least one threshold per class");
  }
  if (!gt.has_edge_set()) {
    throw std::invalid_argument("ground-truth scene must carry an edge set");
  }

  const ClassView lanes_p = select_class(pred, SegmentCategory::kLane);
  const ClassView lanes_g = select_class(gt, SegmentCategory::kLane);
  const ClassView peds_p = select_class(pred, SegmentCategory::kPedestrianCrossing);
  const ClassView peds_g = select_class(gt, SegmentCategory::kPedestrianCrossing);

  const auto lane_dist = distance_matrix(pred, lanes_p, gt, lanes_g);
  const auto ped_dist = distance_matrix(pred, peds_p, gt, peds_g);

  MetricsReport report;
  report.lanes = evaluate_class(lane_dist, lanes_p, lanes_g.indices.size(), cfg.lane_thresholds);
  report.peds = evaluate_class(ped_dist, peds_p, peds_g.indices.size(), cfg.ped_thresholds);
  report.map = 0.5 * (report.lanes.ap + report.peds.ap);

  // Connectivity is defined between lane segments; edges touching other
  // categories do not contribute.
  const double middle = cfg.lane_thresholds[cfg.lane_thresholds.size() / 2];
  const MatchResult match =
      match_and_ap(lane_dist, lanes_p.confidence, lanes_p.ids, lanes_g.indices.size(), middle);

  std::vector<std::size_t> gt_local(gt.segments.size(), gt.segments.size());
  for (std::size_t j = 0; j < lanes_g.indices.size(); ++j) gt_local[lanes_g.indices[j]] = j;
  EdgeSet gt_edges_local;
  for (const auto& [from, to] : gt.edge_set()) {
    const std::size_t lf = gt_local[from];
    const std::size_t lt = gt_local[to];
    if (lf < lanes_g.indices.size() && lt < lanes_g.indices.size()) {
      gt_edges_local.emplace_back(lf, lt);
    }
  }

  const ScoreMatrix full_scores = prediction_scores(pred);
  ScoreMatrix lane_scores = ScoreMatrix::zeros(lanes_p.indices.size());
  for (std::size_t i = 0; i < lanes_p.indices.size(); ++i) {
    for (std::size_t j = 0; j < lanes_p.indices.size(); ++j) {
      lane_scores.at(i, j) = full_scores.at(lanes_p.indices[i], lanes_p.indices[j]);
    }
  }

  report.top = top_score(gt_edges_local, lanes_g.indices.size(), lane_scores, match.pred_to_gt);
  return report;
}

}  // namespace lanekit
