#include "lanekit/canvas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace lanekit {

void CanvasConfig::validate() const {
  if (height_px <= 0 || width_px <= 0) throw std::invalid_argument("canvas dimensions must be positive");
  if (!(resolution > 0.0)) throw std::invalid_argument("canvas resolution must be positive");
  if (!extent.well_ordered()) throw std::invalid_argument("canvas extent must be well ordered");
  if (!(road_width > 0.0) || !(walk_width > 0.0)) {
    throw std::invalid_argument("canvas line widths must be positive");
  }
  if (!(blur_sigma >= 0.0)) throw std::invalid_argument("blur sigma must be >= 0");
  if (std::abs(height_px * resolution - extent.width_x()) > 1e-9 ||
      std::abs(width_px * resolution - extent.width_y()) > 1e-9) {
    throw std::invalid_argument("canvas pixel grid does not tile the extent");
  }
}

namespace {

struct PixelRange {
  int r_lo, r_hi, c_lo, c_hi;
  bool empty() const { return r_lo > r_hi || c_lo > c_hi; }
};

// Pixel-center rows/cols whose centers can lie within `pad` of the segment
// bounding box, widened by one pixel against float edge effects.
PixelRange bbox_pixels(const CanvasConfig& cfg, Point2 a, Point2 b, double pad) {
  const double x_lo = std::min(a.x, b.x) - pad;
  const double x_hi = std::max(a.x, b.x) + pad;
  const double y_lo = std::min(a.y, b.y) - pad;
  const double y_hi = std::max(a.y, b.y) + pad;
  PixelRange pr;
  pr.r_lo = std::max(0, static_cast<int>(std::floor((cfg.extent.x_max - x_hi) / cfg.resolution - 0.5)) - 1);
  pr.r_hi = std::min(cfg.height_px - 1,
                     static_cast<int>(std::ceil((cfg.extent.x_max - x_lo) / cfg.resolution - 0.5)) + 1);
  pr.c_lo = std::max(0, static_cast<int>(std::floor((cfg.extent.y_max - y_hi) / cfg.resolution - 0.5)) - 1);
  pr.c_hi = std::min(cfg.width_px - 1,
                     static_cast<int>(std::ceil((cfg.extent.y_max - y_lo) / cfg.resolution - 0.5)) + 1);
  return pr;
}

void draw_mask(const SdMapLocal& map, const CanvasConfig& cfg, SdCategory category,
               double half_width, CanvasStack& stack, int channel) {
  const double hw2 = half_width * half_width;
  for (const SdElement& e : map.elements) {
    if (e.category != category) continue;
    const auto& pts = e.polyline.points();
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
      const auto clipped = clip_segment(pts[s], pts[s + 1], cfg.extent);
      if (!clipped) continue;
      const auto [ca, cb] = *clipped;
      const PixelRange pr = bbox_pixels(cfg, ca, cb, half_width);
      for (int r = pr.r_lo; r <= pr.r_hi; ++r) {
        const double px = cfg.row_center_x(r);
        for (int c = pr.c_lo; c <= pr.c_hi; ++c) {
          const Point2 center{px, cfg.col_center_y(c)};
          if (point_segment_squared_distance(center, ca, cb) <= hw2) {
            stack.at(channel, r, c) = 1.0f;
          }
        }
      }
    }
  }
}

// Road mask plus per-pixel direction of the nearest covering road segment.
// Ties are broken by lower (element index, segment index).
void road_pass(const SdMapLocal& map, const CanvasConfig& cfg, CanvasStack* stack,
               std::vector<float>* dx_out, std::vector<float>* dy_out) {
  const std::size_t n_px = static_cast<std::size_t>(cfg.height_px) * cfg.width_px;
  const double hw = cfg.road_width * 0.5;
  const double hw2 = hw * hw;

  std::vector<double> best_d2(n_px, std::numeric_limits<double>::infinity());
  std::vector<std::uint64_t> best_key(n_px, std::numeric_limits<std::uint64_t>::max());
  std::vector<float> dx(n_px, 0.0f), dy(n_px, 0.0f);

  for (std::size_t e = 0; e < map.elements.size(); ++e) {
    const SdElement& el = map.elements[e];
    if (el.category != SdCategory::kRoad) continue;
    const auto& pts = el.polyline.points();
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
      const auto clipped = clip_segment(pts[s], pts[s + 1], cfg.extent);
      if (!clipped) continue;
      const auto [ca, cb] = *clipped;
      // Direction follows the unclipped point order (clipping preserves it).
      const double len = distance(pts[s], pts[s + 1]);
      const float seg_dx = static_cast<float>((pts[s + 1].x - pts[s].x) / len);
      const float seg_dy = static_cast<float>((pts[s + 1].y - pts[s].y) / len);
      const std::uint64_t key = (static_cast<std::uint64_t>(e) << 32) | s;
      const PixelRange pr = bbox_pixels(cfg, ca, cb, hw);
      for (int r = pr.r_lo; r <= pr.r_hi; ++r) {
        const double px = cfg.row_center_x(r);
        for (int c = pr.c_lo; c <= pr.c_hi; ++c) {
          const Point2 center{px, cfg.col_center_y(c)};
          const double d2 = point_segment_squared_distance(center, ca, cb);
          if (d2 > hw2) continue;
          const std::size_t idx = static_cast<std::size_t>(r) * cfg.width_px + c;
          if (d2 < best_d2[idx] || (d2 == best_d2[idx] && key < best_key[idx])) {
            best_d2[idx] = d2;
            best_key[idx] = key;
            dx[idx] = seg_dx;
            dy[idx] = seg_dy;
          }
        }
      }
    }
  }

  if (stack) {
    for (int r = 0; r < cfg.height_px; ++r) {
      for (int c = 0; c < cfg.width_px; ++c) {
        const std::size_t idx = static_cast<std::size_t>(r) * cfg.width_px + c;
        if (best_d2[idx] <= hw2) {
          stack->at(CanvasStack::kRoad, r, c) = 1.0f;
          stack->at(CanvasStack::kDx, r, c) = dx[idx];
          stack->at(CanvasStack::kDy, r, c) = dy[idx];
        }
      }
    }
  }
  if (dx_out) *dx_out = std::move(dx);
  if (dy_out) *dy_out = std::move(dy);
}

// Separable Gaussian, truncated at 3 sigma, weights renormalized over the
// in-bounds support at the borders.
void blur_channel(const CanvasConfig& cfg, CanvasStack& stack, int src, int dst) {
  const int h = cfg.height_px;
  const int w = cfg.width_px;
  const double sigma = cfg.blur_sigma;
  const int radius = sigma > 0.0 ? static_cast<int>(std::floor(3.0 * sigma)) : 0;

  if (radius == 0) {
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c) stack.at(dst, r, c) = stack.at(src, r, c);
    return;
  }

  std::vector<double> kernel(2 * radius + 1);
  for (int k = -radius; k <= radius; ++k) {
    kernel[k + radius] = std::exp(-0.5 * (k * k) / (sigma * sigma));
  }

  std::vector<double> tmp(static_cast<std::size_t>(h) * w, 0.0);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double acc = 0.0, wsum = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const int rr = r + k;
        if (rr < 0 || rr >= h) continue;
        acc += kernel[k + radius] * stack.at(src, rr, c);
        wsum += kernel[k + radius];
      }
      tmp[static_cast<std::size_t>(r) * w + c] = acc / wsum;
    }
  }
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double acc = 0.0, wsum = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const int cc = c + k;
        if (cc < 0 || cc >= w) continue;
        acc += kernel[k + radius] * tmp[static_cast<std::size_t>(r) * w + cc];
        wsum += kernel[k + radius];
      }
      stack.at(dst, r, c) = static_cast<float>(std::clamp(acc / wsum, 0.0, 1.0));
    }
  }
}

}  // namespace

CanvasStack rasterize(const SdMapLocal& map, const CanvasConfig& cfg) {
  cfg.validate();
  CanvasStack stack(cfg.height_px, cfg.width_px);
  road_pass(map, cfg, &stack, nullptr, nullptr);
  draw_mask(map, cfg, SdCategory::kSidewalk, cfg.walk_width * 0.5, stack, CanvasStack::kSidewalk);
  draw_mask(map, cfg, SdCategory::kCrosswalk, cfg.walk_width * 0.5, stack, CanvasStack::kCrosswalk);
  blur_channel(cfg, stack, CanvasStack::kRoad, CanvasStack::kRoadBlur);
  return stack;
}

std::pair<std::vector<float>, std::vector<float>> direction_channels(const SdMapLocal& map,
                                                                     const CanvasConfig& cfg) {
  cfg.validate();
  std::vector<float> dx, dy;
  road_pass(map, cfg, nullptr, &dx, &dy);
  return {std::move(dx), std::move(dy)};
}

}  // namespace lanekit
