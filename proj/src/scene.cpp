#include "lanekit/scene.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace lanekit {

using nlohmann::json;

const char* to_string(SegmentCategory c) {
  switch (c) {
    case SegmentCategory::kLane:
      return "lane";
    case SegmentCategory::kPedestrianCrossing:
      return "pedestrian_crossing";
  }
  throw std::invalid_argument("unknown segment category");
}

SegmentCategory segment_category_from_string(const std::string& s) {
  if (s == "lane") return SegmentCategory::kLane;
  if (s == "pedestrian_crossing") return SegmentCategory::kPedestrianCrossing;
  throw std::invalid_argument("unknown segment category '" + s + "'");
}

LaneGraph SceneFile::lane_graph() const {
  LaneGraph g;
  g.segments.reserve(segments.size());
  for (const SceneSegment& s : segments) g.segments.push_back(s.segment);
  g.topology = topology;
  return g;
}

namespace {

[[noreturn]] void fail(const std::string& ctx, const std::string& msg) {
  throw std::runtime_error(ctx + ": " + msg);
}

const json& require(const json& obj, const char* key, const std::string& ctx) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(ctx, std::string("missing field '") + key + "'");
  return *it;
}

double as_number(const json& v, const std::string& ctx) {
  if (!v.is_number()) fail(ctx, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(ctx, "number must be finite");
  return d;
}

std::int64_t as_integer(const json& v, const std::string& ctx) {
  if (!v.is_number_integer()) fail(ctx, "expected an integer");
  return v.get<std::int64_t>();
}

std::size_t as_index(const json& v, const std::string& ctx) {
  const std::int64_t i = as_integer(v, ctx);
  if (i < 0) fail(ctx, "expected a non-negative integer");
  return static_cast<std::size_t>(i);
}

std::string as_string(const json& v, const std::string& ctx) {
  if (!v.is_string()) fail(ctx, "expected a string");
  return v.get<std::string>();
}

// Copies every key of `obj` not listed in `known` into a stash object.
template <std::size_t N>
json collect_extra(const json& obj, const char* const (&known)[N]) {
  json extra = json::object();
  for (const auto& [key, value] : obj.items()) {
    bool is_known = false;
    for (const char* k : known) {
      if (key == k) {
        is_known = true;
        break;
      }
    }
    if (!is_known) extra[key] = value;
  }
  return extra;
}

void merge_extra(json& obj, const json& extra, const std::string& ctx) {
  if (!extra.is_object()) {
    if (extra.is_null()) return;
    fail(ctx, "extra-field stash must be a JSON object");
  }
  for (const auto& [key, value] : extra.items()) {
    if (obj.contains(key)) fail(ctx, "extra field '" + key + "' collides with a schema field");
    obj[key] = value;
  }
}

std::vector<Point2> parse_points(const json& v, const std::string& ctx) {
  if (!v.is_array()) fail(ctx, "expected an array of [x, y] pairs");
  std::vector<Point2> pts;
  pts.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string pctx = ctx + "[" + std::to_string(i) + "]";
    const json& p = v[i];
    if (!p.is_array() || p.size() != 2) fail(pctx, "expected an [x, y] pair");
    pts.push_back({as_number(p[0], pctx), as_number(p[1], pctx)});
  }
  return pts;
}

Polyline parse_polyline(const json& v, const std::string& ctx) {
  try {
    return Polyline(parse_points(v, ctx));
  } catch (const std::invalid_argument& e) {
    fail(ctx, e.what());
  }
}

json points_to_json(const std::vector<Point2>& pts) {
  json a = json::array();
  for (const Point2& p : pts) a.push_back(json::array({p.x, p.y}));
  return a;
}

constexpr const char* kRectKeys[] = {"x_min", "x_max", "y_min", "y_max"};

std::pair<Rect, json> parse_rect(const json& v, const std::string& ctx) {
  if (!v.is_object()) fail(ctx, "expected an object");
  Rect r;
  r.x_min = as_number(require(v, "x_min", ctx), ctx + ".x_min");
  r.x_max = as_number(require(v, "x_max", ctx), ctx + ".x_max");
  r.y_min = as_number(require(v, "y_min", ctx), ctx + ".y_min");
  r.y_max = as_number(require(v, "y_max", ctx), ctx + ".y_max");
  if (!r.well_ordered()) fail(ctx, "rectangle bounds must satisfy min < max on both axes");
  return {r, collect_extra(v, kRectKeys)};
}

json rect_to_json(const Rect& r, const json& extra, const std::string& ctx) {
  json v;
  v["x_min"] = r.x_min;
  v["x_max"] = r.x_max;
  v["y_min"] = r.y_min;
  v["y_max"] = r.y_max;
  merge_extra(v, extra, ctx);
  return v;
}

constexpr const char* kSegmentKeys[] = {"id",          "category",      "centerline",
                                        "left_boundary", "right_boundary", "left_type",
                                        "right_type",  "confidence"};

SceneSegment parse_segment(const json& v, const std::string& ctx) {
  if (!v.is_object()) fail(ctx, "expected an object");
  const std::int64_t id = as_integer(require(v, "id", ctx), ctx + ".id");
  const std::string idctx = ctx + " (id " + std::to_string(id) + ")";

  SegmentCategory category = SegmentCategory::kLane;
  try {
    category = segment_category_from_string(
        as_string(require(v, "category", idctx), idctx + ".category"));
  } catch (const std::invalid_argument& e) {
    fail(idctx + ".category", e.what());
  }

  Polyline center = parse_polyline(require(v, "centerline", idctx), idctx + ".centerline");
  Polyline left = parse_polyline(require(v, "left_boundary", idctx), idctx + ".left_boundary");
  Polyline right = parse_polyline(require(v, "right_boundary", idctx), idctx + ".right_boundary");

  LineType left_type = LineType::kNonVisible;
  LineType right_type = LineType::kNonVisible;
  try {
    left_type = line_type_from_string(as_string(require(v, "left_type", idctx), idctx));
    right_type = line_type_from_string(as_string(require(v, "right_type", idctx), idctx));
  } catch (const std::invalid_argument& e) {
    fail(idctx, e.what());
  }

  double confidence = 1.0;
  if (const auto it = v.find("confidence"); it != v.end()) {
    confidence = as_number(*it, idctx + ".confidence");
  }

  try {
    LaneSegment seg(id, std::move(center), std::move(left), std::move(right), left_type,
                    right_type, confidence);
    return SceneSegment{category, std::move(seg), collect_extra(v, kSegmentKeys)};
  } catch (const std::invalid_argument& e) {
    fail(idctx, e.what());
  }
}

json segment_to_json(const SceneSegment& s, const std::string& ctx) {
  json v;
  v["id"] = s.segment.id();
  v["category"] = to_string(s.category);
  v["centerline"] = points_to_json(s.segment.centerline().points());
  v["left_boundary"] = points_to_json(s.segment.left_boundary().points());
  v["right_boundary"] = points_to_json(s.segment.right_boundary().points());
  v["left_type"] = to_string(s.segment.left_type());
  v["right_type"] = to_string(s.segment.right_type());
  v["confidence"] = s.segment.confidence();
  merge_extra(v, s.extra, ctx);
  return v;
}

constexpr const char* kTopologyKeys[] = {"kind", "edges", "n", "values"};

std::pair<Topology, json> parse_topology(const json& v, const std::string& ctx) {
  if (!v.is_object()) fail(ctx, "expected an object");
  const std::string kind = as_string(require(v, "kind", ctx), ctx + ".kind");
  Topology topo;
  if (kind == "edges") {
    const json& edges = require(v, "edges", ctx);
    if (!edges.is_array()) fail(ctx + ".edges", "expected an array of [from, to] pairs");
    EdgeSet set;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string ectx = ctx + ".edges[" + std::to_string(i) + "]";
      const json& e = edges[i];
      if (!e.is_array() || e.size() != 2) fail(ectx, "expected a [from, to] pair");
      set.emplace_back(as_index(e[0], ectx), as_index(e[1], ectx));
    }
    topo = std::move(set);
  } else if (kind == "scores") {
    ScoreMatrix m;
    m.n = as_index(require(v, "n", ctx), ctx + ".n");
    const json& values = require(v, "values", ctx);
    if (!values.is_array()) fail(ctx + ".values", "expected an array of numbers");
    m.values.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      m.values.push_back(as_number(values[i], ctx + ".values[" + std::to_string(i) + "]"));
    }
    topo = std::move(m);
  } else {
    fail(ctx + ".kind", "expected 'edges' or 'scores', got '" + kind + "'");
  }
  return {std::move(topo), collect_extra(v, kTopologyKeys)};
}

json topology_to_json(const Topology& topo, const json& extra, const std::string& ctx) {
  json v;
  if (std::holds_alternative<EdgeSet>(topo)) {
    v["kind"] = "edges";
    json edges = json::array();
    for (const auto& [from, to] : std::get<EdgeSet>(topo)) {
      edges.push_back(json::array({from, to}));
    }
    v["edges"] = std::move(edges);
  } else {
    const ScoreMatrix& m = std::get<ScoreMatrix>(topo);
    v["kind"] = "scores";
    v["n"] = m.n;
    v["values"] = m.values;
  }
  merge_extra(v, extra, ctx);
  return v;
}

constexpr const char* kSdElementKeys[] = {"category", "points"};
constexpr const char* kSdMapKeys[] = {"range", "elements"};

}  // namespace

SceneFile scene_from_text(const std::string& text, const std::string& context,
                          std::vector<GraphDiagnostic>* warnings) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(context, std::string("JSON parse error: ") + e.what());
  }
  if (!root.is_object()) fail(context, "top-level JSON value must be an object");

  SceneFile scene;
  const std::int64_t version =
      as_integer(require(root, "schema_version", context), context + ".schema_version");
  if (version != kSceneSchemaVersion) {
    fail(context, "unsupported schema_version " + std::to_string(version) + " (expected " +
                      std::to_string(kSceneSchemaVersion) + ")");
  }
  scene.schema_version = static_cast<int>(version);
  scene.scene_id = as_string(require(root, "scene_id", context), context + ".scene_id");

  std::tie(scene.extent, scene.extent_extra) =
      parse_rect(require(root, "extent", context), context + ".extent");

  const json& segments = require(root, "segments", context);
  if (!segments.is_array()) fail(context + ".segments", "expected an array");
  std::set<std::int64_t> seen_ids;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    SceneSegment s =
        parse_segment(segments[i], context + ".segments[" + std::to_string(i) + "]");
    if (!seen_ids.insert(s.segment.id()).second) {
      fail(context, "duplicate segment id " + std::to_string(s.segment.id()));
    }
    scene.segments.push_back(std::move(s));
  }

  std::tie(scene.topology, scene.topology_extra) =
      parse_topology(require(root, "topology", context), context + ".topology");

  if (const auto it = root.find("sd_map"); it != root.end()) {
    const std::string sctx = context + ".sd_map";
    if (!it->is_object()) fail(sctx, "expected an object");
    SdMapLocal sd;
    std::tie(sd.range, scene.sd_range_extra) =
        parse_rect(require(*it, "range", sctx), sctx + ".range");
    const json& elements = require(*it, "elements", sctx);
    if (!elements.is_array()) fail(sctx + ".elements", "expected an array");
    for (std::size_t i = 0; i < elements.size(); ++i) {
      const std::string ectx = sctx + ".elements[" + std::to_string(i) + "]";
      const json& e = elements[i];
      if (!e.is_object()) fail(ectx, "expected an object");
      SdCategory category = SdCategory::kRoad;
      try {
        category =
            sd_category_from_string(as_string(require(e, "category", ectx), ectx + ".category"));
      } catch (const std::invalid_argument& err) {
        fail(ectx + ".category", err.what());
      }
      Polyline line = parse_polyline(require(e, "points", ectx), ectx + ".points");
      sd.elements.push_back({category, std::move(line)});
      scene.sd_element_extra.push_back(collect_extra(e, kSdElementKeys));
    }
    scene.sd_map_extra = collect_extra(*it, kSdMapKeys);
    scene.sd_map = std::move(sd);
  }

  constexpr const char* kRootKeys[] = {"schema_version", "scene_id", "extent",
                                       "segments",       "topology", "sd_map"};
  scene.extras = collect_extra(root, kRootKeys);

  const std::vector<GraphDiagnostic> diags = validate_graph(scene.lane_graph());
  for (const GraphDiagnostic& d : diags) {
    if (d.severity == GraphDiagnostic::Severity::kError) fail(context, d.message);
    if (warnings) warnings->push_back(d);
  }
  return scene;
}

std::string scene_to_text(const SceneFile& scene) {
  const std::string ctx = "scene '" + scene.scene_id + "'";
  json root;
  root["schema_version"] = scene.schema_version;
  root["scene_id"] = scene.scene_id;
  root["extent"] = rect_to_json(scene.extent, scene.extent_extra, ctx + ".extent");

  json segments = json::array();
  for (std::size_t i = 0; i < scene.segments.size(); ++i) {
    segments.push_back(
        segment_to_json(scene.segments[i], ctx + ".segments[" + std::to_string(i) + "]"));
  }
  root["segments"] = std::move(segments);
  root["topology"] = topology_to_json(scene.topology, scene.topology_extra, ctx + ".topology");

  if (scene.sd_map) {
    json sd;
    sd["range"] = rect_to_json(scene.sd_map->range, scene.sd_range_extra, ctx + ".sd_map.range");
    json elements = json::array();
    for (std::size_t i = 0; i < scene.sd_map->elements.size(); ++i) {
      const SdElement& e = scene.sd_map->elements[i];
      json v;
      v["category"] = to_string(e.category);
      v["points"] = points_to_json(e.polyline.points());
      if (i < scene.sd_element_extra.size()) {
        merge_extra(v, scene.sd_element_extra[i],
                    ctx + ".sd_map.elements[" + std::to_string(i) + "]");
      }
      elements.push_back(std::move(v));
    }
    sd["elements"] = std::move(elements);
    merge_extra(sd, scene.sd_map_extra, ctx + ".sd_map");
    root["sd_map"] = std::move(sd);
  }

  merge_extra(root, scene.extras, ctx);
  return root.dump(2) + "\n";
}

SceneFile load_scene(const std::string& path, std::vector<GraphDiagnostic>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return scene_from_text(buf.str(), path, warnings);
}

void save_scene(const SceneFile& scene, const std::string& path) {
  const std::string text = scene_to_text(scene);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open file for writing");
  out << text;
  if (!out) fail(path, "write failed");
}

}  // namespace lanekit
