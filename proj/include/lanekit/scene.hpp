#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "lanekit/geometry.hpp"
#include "lanekit/lane.hpp"
#include "lanekit/sd_map.hpp"

namespace lanekit {

inline constexpr int kSceneSchemaVersion = 1;

// Pedestrian crossings are stored in lane-segment form (centerline plus two
// boundaries); the category tag keeps the evaluation classes apart.
enum class SegmentCategory { kLane, kPedestrianCrossing };

const char* to_string(SegmentCategory c);
SegmentCategory segment_category_from_string(const std::string& s);

struct SceneSegment {
  SegmentCategory category;
  LaneSegment segment;
  nlohmann::json extra = nlohmann::json::object();
};

struct SceneFile {
  int schema_version = kSceneSchemaVersion;
  std::string scene_id;
  Rect extent{-50.0, 50.0, -25.0, 25.0};
  std::vector<SceneSegment> segments;
  Topology topology = EdgeSet{};
  std::optional<SdMapLocal> sd_map;

  // Unknown JSON keys survive round trips: one stash per schema object.
  // sd_element_extra aligns with sd_map->elements by index.
  nlohmann::json extras = nlohmann::json::object();
  nlohmann::json extent_extra = nlohmann::json::object();
  nlohmann::json topology_extra = nlohmann::json::object();
  nlohmann::json sd_map_extra = nlohmann::json::object();
  nlohmann::json sd_range_extra = nlohmann::json::object();
  std::vector<nlohmann::json> sd_element_extra;

  bool has_edge_set() const { return std::holds_alternative<EdgeSet>(topology); }
  const EdgeSet& edge_set() const { return std::get<EdgeSet>(topology); }
  const ScoreMatrix& score_matrix() const { return std::get<ScoreMatrix>(topology); }

  LaneGraph lane_graph() const;
};

// Canonical text form: two-space indented JSON with sorted keys and a
// trailing newline. save(load(save(x))) == save(x).
std::string scene_to_text(const SceneFile& scene);

// `context` (usually a file path) prefixes every error message. Errors are
// std::runtime_error; warning-level graph diagnostics are appended to
// `warnings` when provided.
SceneFile scene_from_text(const std::string& text, const std::string& context,
                          std::vector<GraphDiagnostic>* warnings = nullptr);

SceneFile load_scene(const std::string& path, std::vector<GraphDiagnostic>* warnings = nullptr);
void save_scene(const SceneFile& scene, const std::string& path);

}  // namespace lanekit
