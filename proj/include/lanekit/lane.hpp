#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lanekit/geometry.hpp"

namespace lanekit {

enum class LineType { kNonVisible, kSolid, kDashed };

const char* to_string(LineType t);
LineType line_type_from_string(const std::string& s);

// Per-point lateral half-width vectors; left = centerline - offset,
// right = centerline + offset.
struct OffsetVector {
  std::vector<Point2> offsets;
};

// A lane instance: centerline plus left/right boundaries, all with the same
// point count. Pedestrian crossings reuse this shape (see scene.hpp).
class LaneSegment {
 public:
  LaneSegment(std::int64_t id, Polyline centerline, Polyline left_boundary,
              Polyline right_boundary, LineType left_type, LineType right_type,
              double confidence = 1.0);

  std::int64_t id() const { return id_; }
  const Polyline& centerline() const { return centerline_; }
  const Polyline& left_boundary() const { return left_; }
  const Polyline& right_boundary() const { return right_; }
  LineType left_type() const { return left_type_; }
  LineType right_type() const { return right_type_; }
  double confidence() const { return confidence_; }
  std::size_t point_count() const { return centerline_.size(); }

  LaneSegment transformed(const RigidTransform& t) const;
  LaneSegment with_confidence(double c) const;

 private:
  std::int64_t id_;
  Polyline centerline_;
  Polyline left_;
  Polyline right_;
  LineType left_type_;
  LineType right_type_;
  double confidence_;
};

std::pair<Polyline, Polyline> reconstruct_boundaries(const Polyline& centerline,
                                                     const OffsetVector& off);

// Distance from a's centerline end to b's centerline start.
double endpoint_gap(const LaneSegment& a, const LaneSegment& b);

// Ground-truth topology: directed boolean edge set over segment indices.
using EdgeSet = std::vector<std::pair<std::size_t, std::size_t>>;

// Predicted topology: dense row-major score matrix, entry (i,j) scores
// "end of segment i connects to start of segment j".
struct ScoreMatrix {
  std::size_t n = 0;
  std::vector<double> values;  // n*n, row-major

  static ScoreMatrix zeros(std::size_t n) { return {n, std::vector<double>(n * n, 0.0)}; }
  double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * n + j]; }
};

using Topology = std::variant<EdgeSet, ScoreMatrix>;

struct LaneGraph {
  std::vector<LaneSegment> segments;
  Topology topology;

  bool has_edge_set() const { return std::holds_alternative<EdgeSet>(topology); }
  const EdgeSet& edge_set() const { return std::get<EdgeSet>(topology); }
  const ScoreMatrix& score_matrix() const { return std::get<ScoreMatrix>(topology); }
};

struct GraphDiagnostic {
  enum class Severity { kError, kWarning };
  Severity severity;
  std::string message;
};

// Reports index violations and GT self-loops as errors, oversized endpoint
// gaps (> gap_threshold, default 2 m) as warnings. Never throws.
std::vector<GraphDiagnostic> validate_graph(const LaneGraph& g, double gap_threshold = 2.0);

}  // namespace lanekit
