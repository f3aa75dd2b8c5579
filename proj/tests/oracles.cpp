#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracles {

using lanekit::CanvasConfig;
using lanekit::Point2;
using lanekit::SdCategory;
using lanekit::SdMapLocal;

namespace {

double frechet_rec(const std::vector<Point2>& a, const std::vector<Point2>& b, std::size_t i,
                   std::size_t j, std::vector<double>& memo) {
  double& slot = memo[i * b.size() + j];
  if (slot >= 0.0) return slot;
  const double d = lanekit::distance(a[i], b[j]);
  double reach;
  if (i == 0 && j == 0) {
    reach = d;
  } else if (i == 0) {
    reach = std::max(frechet_rec(a, b, 0, j - 1, memo), d);
  } else if (j == 0) {
    reach = std::max(frechet_rec(a, b, i - 1, 0, memo), d);
  } else {
    const double best = std::min({frechet_rec(a, b, i - 1, j, memo),
                                  frechet_rec(a, b, i, j - 1, memo),
                                  frechet_rec(a, b, i - 1, j - 1, memo)});
    reach = std::max(best, d);
  }
  slot = reach;
  return reach;
}

}  // namespace

double frechet_recursive(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("frechet oracle: empty input");
  std::vector<double> memo(a.size() * b.size(), -1.0);
  return frechet_rec(a, b, a.size() - 1, b.size() - 1, memo);
}

double chamfer_brute(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("chamfer oracle: empty input");
  const auto directed = [](const std::vector<Point2>& from, const std::vector<Point2>& to) {
    double total = 0.0;
    for (std::size_t i = from.size(); i-- > 0;) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = to.size(); j-- > 0;) {
        best = std::min(best, lanekit::distance(from[i], to[j]));
      }
      total += best;
    }
    return total / static_cast<double>(from.size());
  };
  return (directed(a, b) + directed(b, a)) / 2.0;
}

ApOracleResult ap_exhaustive(const std::vector<std::vector<double>>& dist,
                             const std::vector<double>& confidence,
                             const std::vector<std::int64_t>& ids, std::size_t gt_count,
                             double threshold) {
  const std::size_t n = dist.size();
  ApOracleResult result;
  if (gt_count == 0) {
    result.ap = n == 0 ? 1.0 : 0.0;
    result.fp = n;
    return result;
  }

  // Rank by repeatedly selecting the highest-confidence remaining
  // prediction, lowest id first on ties.
  std::vector<bool> used(n, false);
  std::vector<std::size_t> rank;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      if (pick == n || confidence[i] > confidence[pick] ||
          (confidence[i] == confidence[pick] && ids[i] < ids[pick])) {
        pick = i;
      }
    }
    used[pick] = true;
    rank.push_back(pick);
  }

  std::vector<bool> gt_used(gt_count, false);
  std::vector<bool> tp_at(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = rank[k];
    std::size_t best = gt_count;
    for (std::size_t gidx = 0; gidx < gt_count; ++gidx) {
      if (gt_used[gidx] || dist[i][gidx] > threshold) continue;
      if (best == gt_count || dist[i][gidx] < dist[i][best]) best = gidx;
    }
    if (best != gt_count) {
      gt_used[best] = true;
      tp_at[k] = true;
    }
  }

  std::size_t cum = 0;
  std::vector<double> prec(n), rec(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (tp_at[k]) ++cum;
    prec[k] = static_cast<double>(cum) / static_cast<double>(k + 1);
    rec[k] = static_cast<double>(cum) / static_cast<double>(gt_count);
  }

  double ap = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double best_later = 0.0;
    for (std::size_t j = k; j < n; ++j) best_later = std::max(best_later, prec[j]);
    ap += (rec[k] - prev) * best_later;
    prev = rec[k];
  }
  result.ap = ap;
  result.tp = cum;
  result.fp = n - cum;
  result.fn = gt_count - cum;
  return result;
}

std::vector<float> mask_per_pixel(const SdMapLocal& map, const CanvasConfig& cfg,
                                  SdCategory category, double width) {
  const double hw2 = (width * 0.5) * (width * 0.5);
  std::vector<float> mask(static_cast<std::size_t>(cfg.height_px) * cfg.width_px, 0.0f);
  for (int r = 0; r < cfg.height_px; ++r) {
    for (int c = 0; c < cfg.width_px; ++c) {
      const Point2 center{cfg.row_center_x(r), cfg.col_center_y(c)};
      bool covered = false;
      for (const lanekit::SdElement& e : map.elements) {
        if (e.category != category) continue;
        const auto& pts = e.polyline.points();
        for (std::size_t s = 0; s + 1 < pts.size() && !covered; ++s) {
          const auto clipped = lanekit::clip_segment(pts[s], pts[s + 1], cfg.extent);
          if (!clipped) continue;
          if (lanekit::point_segment_squared_distance(center, clipped->first, clipped->second) <=
              hw2) {
            covered = true;
          }
        }
        if (covered) break;
      }
      mask[static_cast<std::size_t>(r) * cfg.width_px + c] = covered ? 1.0f : 0.0f;
    }
  }
  return mask;
}

std::pair<std::vector<float>, std::vector<float>> direction_per_pixel(const SdMapLocal& map,
                                                                      const CanvasConfig& cfg) {
  const double hw2 = (cfg.road_width * 0.5) * (cfg.road_width * 0.5);
  const std::size_t n_px = static_cast<std::size_t>(cfg.height_px) * cfg.width_px;
  std::vector<float> dx(n_px, 0.0f), dy(n_px, 0.0f);
  for (int r = 0; r < cfg.height_px; ++r) {
    for (int c = 0; c < cfg.width_px; ++c) {
      const Point2 center{cfg.row_center_x(r), cfg.col_center_y(c)};
      double best = std::numeric_limits<double>::infinity();
      Point2 dir{0.0, 0.0};
      bool found = false;
      for (std::size_t e = 0; e < map.elements.size(); ++e) {
        if (map.elements[e].category != SdCategory::kRoad) continue;
        const auto& pts = map.elements[e].polyline.points();
        for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
          const auto clipped = lanekit::clip_segment(pts[s], pts[s + 1], cfg.extent);
          if (!clipped) continue;
          const double d2 =
              lanekit::point_segment_squared_distance(center, clipped->first, clipped->second);
          // First (element, segment) in scan order wins ties.
          if (d2 <= hw2 && d2 < best) {
            best = d2;
            const double len = lanekit::distance(pts[s], pts[s + 1]);
            dir = {(pts[s + 1].x - pts[s].x) / len, (pts[s + 1].y - pts[s].y) / len};
            found = true;
          }
        }
      }
      if (found) {
        const std::size_t idx = static_cast<std::size_t>(r) * cfg.width_px + c;
        dx[idx] = static_cast<float>(dir.x);
        dy[idx] = static_cast<float>(dir.y);
      }
    }
  }
  return {std::move(dx), std::move(dy)};
}

}  // namespace oracles
