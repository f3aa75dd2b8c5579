#include "lanekit/lane.hpp"

#include <cmath>
#include <stdexcept>

namespace lanekit {

const char* to_string(LineType t) {
  switch (t) {
    case LineType::kNonVisible: return "non_visible";
    case LineType::kSolid: return "solid";
    case LineType::kDashed: return "dashed";
  }
  return "non_visible";
}

LineType line_type_from_string(const std::string& s) {
  if (s == "non_visible") return LineType::kNonVisible;
  if (s == "solid") return LineType::kSolid;
  if (s == "dashed") return LineType::kDashed;
  throw std::invalid_argument("unknown line type '" + s + "'");
}

LaneSegment::LaneSegment(std::int64_t id, Polyline centerline, Polyline left_boundary,
                         Polyline right_boundary, LineType left_type, LineType right_type,
                         double confidence)
    : id_(id),
      centerline_(std::move(centerline)),
      left_(std::move(left_boundary)),
      right_(std::move(right_boundary)),
      left_type_(left_type),
      right_type_(right_type),
      confidence_(confidence) {
  if (left_.size() != centerline_.size() || right_.size() != centerline_.size()) {
    throw std::invalid_argument("lane segment " + std::to_string(id_) +
                                ": boundary point counts must match the centerline");
  }
  if (!(confidence_ >= 0.0 && confidence_ <= 1.0)) {
    throw std::invalid_argument("lane segment " + std::to_string(id_) +
                                ": confidence must lie in [0,1]");
  }
}

LaneSegment LaneSegment::transformed(const RigidTransform& t) const {
  return LaneSegment(id_, centerline_.transformed(t), left_.transformed(t),
                     right_.transformed(t), left_type_, right_type_, confidence_);
}

LaneSegment LaneSegment::with_confidence(double c) const {
  return LaneSegment(id_, centerline_, left_, right_, left_type_, right_type_, c);
}

std::pair<Polyline, Polyline> reconstruct_boundaries(const Polyline& centerline,
                                                     const OffsetVector& off) {
  if (off.offsets.size() != centerline.size()) {
    throw std::invalid_argument("offset count does not match centerline point count");
  }
  std::vector<Point2> left, right;
  left.reserve(centerline.size());
  right.reserve(centerline.size());
  for (std::size_t i = 0; i < centerline.size(); ++i) {
    left.push_back(centerline[i] - off.offsets[i]);
    right.push_back(centerline[i] + off.offsets[i]);
  }
  return {Polyline(std::move(left)), Polyline(std::move(right))};
}

double endpoint_gap(const LaneSegment& a, const LaneSegment& b) {
  return distance(a.centerline().back(), b.centerline().front());
}

std::vector<GraphDiagnostic> validate_graph(const LaneGraph& g, double gap_threshold) {
  std::vector<GraphDiagnostic> out;
  const std::size_t n = g.segments.size();
  using Sev = GraphDiagnostic::Severity;

  if (g.has_edge_set()) {
    for (const auto& [from, to] : g.edge_set()) {
      if (from >= n || to >= n) {
        out.push_back({Sev::kError, "edge (" + std::to_string(from) + "," + std::to_string(to) +
                                        ") references a segment index out of range"});
        continue;
      }
      if (from == to) {
        out.push_back({Sev::kError, "self-loop on segment index " + std::to_string(from)});
        continue;
      }
      const double gap = endpoint_gap(g.segments[from], g.segments[to]);
      if (gap > gap_threshold) {
        out.push_back({Sev::kWarning, "edge (" + std::to_string(from) + "," +
                                          std::to_string(to) + ") has endpoint gap " +
                                          std::to_string(gap) + " m (threshold " +
                                          std::to_string(gap_threshold) + " m)"});
      }
    }
  } else {
    const ScoreMatrix& m = g.score_matrix();
    if (m.n != n || m.values.size() != m.n * m.n) {
      out.push_back({Sev::kError, "score matrix shape does not match segment count"});
      return out;
    }
    for (std::size_t i = 0; i < m.n; ++i) {
      for (std::size_t j = 0; j < m.n; ++j) {
        const double v = m.at(i, j);
        if (!(v >= 0.0 && v <= 1.0)) {
          out.push_back({Sev::kError, "score (" + std::to_string(i) + "," + std::to_string(j) +
                                          ") = " + std::to_string(v) + " outside [0,1]"});
        } else if (i != j && v > 0.5 && endpoint_gap(g.segments[i], g.segments[j]) > gap_threshold) {
          out.push_back({Sev::kWarning, "scored edge (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") has endpoint gap above " +
                                            std::to_string(gap_threshold) + " m"});
        }
      }
    }
  }
  return out;
}

}  // namespace lanekit
