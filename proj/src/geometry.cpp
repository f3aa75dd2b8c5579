#include "lanekit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lanekit {

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double squared_distance(Point2 a, Point2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

Point2 RigidTransform::apply(Point2 p) const {
  const double c = std::cos(angle_rad);
  const double s = std::sin(angle_rad);
  return {c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y};
}

Polyline::Polyline(std::vector<Point2> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw std::invalid_argument("polyline needs at least 2 points");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!is_finite(points_[i])) {
      throw std::invalid_argument("polyline point " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && distance(points_[i - 1], points_[i]) <= kMinSegmentLength) {
      throw std::invalid_argument("polyline points " + std::to_string(i - 1) + " and " +
                                  std::to_string(i) + " coincide");
    }
  }
}

double Polyline::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    total += distance(points_[i - 1], points_[i]);
  }
  return total;
}

std::vector<double> Polyline::cumulative_lengths() const {
  std::vector<double> cum(points_.size(), 0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    cum[i] = cum[i - 1] + distance(points_[i - 1], points_[i]);
  }
  return cum;
}

Polyline Polyline::reversed() const {
  std::vector<Point2> pts(points_.rbegin(), points_.rend());
  return Polyline(std::move(pts));
}

Polyline Polyline::transformed(const RigidTransform& t) const {
  std::vector<Point2> pts;
  pts.reserve(points_.size());
  for (const Point2& p : points_) pts.push_back(t.apply(p));
  return Polyline(std::move(pts));
}

Polyline resample_polyline(const Polyline& p, std::size_t n) {
  if (n < 2) throw std::invalid_argument("resample target count must be >= 2");
  const std::vector<double> cum = p.cumulative_lengths();
  const double total = cum.back();
  if (total <= 0.0) throw std::invalid_argument("cannot resample a zero-length polyline");

  std::vector<Point2> out;
  out.reserve(n);
  out.push_back(p.front());
  std::size_t seg = 0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(n - 1);
    while (seg + 2 < p.size() && cum[seg + 1] < target) ++seg;
    const double seg_len = cum[seg + 1] - cum[seg];
    const double t = seg_len > 0.0 ? (target - cum[seg]) / seg_len : 0.0;
    out.push_back(p[seg] + t * (p[seg + 1] - p[seg]));
  }
  out.push_back(p.back());
  return Polyline(std::move(out));
}

double point_segment_squared_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const Point2 ap = p - a;
  const double len_sq = ab.x * ab.x + ab.y * ab.y;
  if (len_sq <= 0.0) return squared_distance(p, a);
  double t = (ap.x * ab.x + ap.y * ab.y) / len_sq;
  t = std::clamp(t, 0.0, 1.0);
  return squared_distance(p, a + t * ab);
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  return std::sqrt(point_segment_squared_distance(p, a, b));
}

namespace {

constexpr int kInside = 0;
constexpr int kLeft = 1;
constexpr int kRight = 2;
constexpr int kBottom = 4;
constexpr int kTop = 8;

int outcode(Point2 p, const Rect& r) {
  int code = kInside;
  if (p.x < r.x_min) code |= kLeft;
  else if (p.x > r.x_max) code |= kRight;
  if (p.y < r.y_min) code |= kBottom;
  else if (p.y > r.y_max) code |= kTop;
  return code;
}

}  // namespace

std::optional<std::pair<Point2, Point2>> clip_segment(Point2 a, Point2 b, const Rect& r) {
  int code_a = outcode(a, r);
  int code_b = outcode(b, r);
  // Iteration bound guards against float ping-pong on re-derived outcodes.
  for (int iter = 0; iter < 32; ++iter) {
    if ((code_a | code_b) == 0) return std::make_pair(a, b);
    if ((code_a & code_b) != 0) return std::nullopt;
    const int code_out = code_a != 0 ? code_a : code_b;
    Point2 p;
    if (code_out & kTop) {
      p = {a.x + (b.x - a.x) * (r.y_max - a.y) / (b.y - a.y), r.y_max};
    } else if (code_out & kBottom) {
      p = {a.x + (b.x - a.x) * (r.y_min - a.y) / (b.y - a.y), r.y_min};
    } else if (code_out & kRight) {
      p = {r.x_max, a.y + (b.y - a.y) * (r.x_max - a.x) / (b.x - a.x)};
    } else {
      p = {r.x_min, a.y + (b.y - a.y) * (r.x_min - a.x) / (b.x - a.x)};
    }
    if (code_out == code_a) {
      a = p;
      code_a = outcode(a, r);
    } else {
      b = p;
      code_b = outcode(b, r);
    }
  }
  return std::make_pair(a, b);
}

}  // namespace lanekit
