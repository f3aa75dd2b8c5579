#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace lanekit {

// Ego-frame coordinates in meters: x forward-positive, y left-positive.
struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
inline Point2 operator*(double s, Point2 a) { return a * s; }
inline bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }

double distance(Point2 a, Point2 b);
double squared_distance(Point2 a, Point2 b);
bool is_finite(Point2 p);

// Axis-aligned rectangle, used for canvas extents and SD map ranges.
struct Rect {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  bool well_ordered() const { return x_min < x_max && y_min < y_max; }
  bool contains(Point2 p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  double width_x() const { return x_max - x_min; }
  double width_y() const { return y_max - y_min; }
};

// Rotation about the ego origin followed by a translation.
struct RigidTransform {
  double angle_rad = 0.0;
  Point2 shift{};

  Point2 apply(Point2 p) const;
  bool is_identity() const { return angle_rad == 0.0 && shift.x == 0.0 && shift.y == 0.0; }
};

// Ordered point chain. Construction enforces: at least 2 points, all finite,
// consecutive points more than kMinSegmentLength apart.
class Polyline {
 public:
  static constexpr double kMinSegmentLength = 1e-9;

  explicit Polyline(std::vector<Point2> points);

  const std::vector<Point2>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const Point2& operator[](std::size_t i) const { return points_[i]; }
  const Point2& front() const { return points_.front(); }
  const Point2& back() const { return points_.back(); }

  double length() const;
  // cumulative arc length per vertex; front() maps to 0, back() to length()
  std::vector<double> cumulative_lengths() const;

  Polyline reversed() const;
  Polyline transformed(const RigidTransform& t) const;

 private:
  std::vector<Point2> points_;
};

// n points at equal arc-length spacing; first/last points preserved exactly.
Polyline resample_polyline(const Polyline& p, std::size_t n);

double point_segment_squared_distance(Point2 p, Point2 a, Point2 b);
double point_segment_distance(Point2 p, Point2 a, Point2 b);

// Cohen-Sutherland segment/rectangle clip. Returns the clipped endpoints in
// original order, or nullopt when the segment lies outside the rectangle.
std::optional<std::pair<Point2, Point2>> clip_segment(Point2 a, Point2 b, const Rect& r);

}  // namespace lanekit
