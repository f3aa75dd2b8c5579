// Command-line front end: encode, tokenize, perturb, eval, topo-demo,
// synth, render. Exit codes: 0 success, 1 domain error, 2 usage error.
// stdout carries machine-readable JSON; diagnostics go to stderr.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lanekit/canvas.hpp"
#include "lanekit/image.hpp"
#include "lanekit/metrics.hpp"
#include "lanekit/noise.hpp"
#include "lanekit/rng.hpp"
#include "lanekit/scene.hpp"
#include "lanekit/synth.hpp"
#include "lanekit/tensor_io.hpp"
#include "lanekit/tokens.hpp"
#include "lanekit/topo.hpp"

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

json parse_config(const std::string& text, const std::string& what) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(what + ": malformed JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError(what + ": expected a JSON object");
  return j;
}

lanekit::Rect rect_from_json(const json& v, const std::string& what) {
  if (!v.is_object()) throw UsageError(what + ": expected an object");
  lanekit::Rect r;
  try {
    for (const auto& [key, value] : v.items()) {
      if (key == "x_min") {
        r.x_min = value.get<double>();
      } else if (key == "x_max") {
        r.x_max = value.get<double>();
      } else if (key == "y_min") {
        r.y_min = value.get<double>();
      } else if (key == "y_max") {
        r.y_max = value.get<double>();
      } else {
        throw UsageError(what + ": unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(what + ": " + e.what());
  }
  return r;
}

lanekit::CanvasConfig canvas_config_from_json(const json& j) {
  lanekit::CanvasConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "height_px") {
        cfg.height_px = value.get<int>();
      } else if (key == "width_px") {
        cfg.width_px = value.get<int>();
      } else if (key == "resolution") {
        cfg.resolution = value.get<double>();
      } else if (key == "road_width") {
        cfg.road_width = value.get<double>();
      } else if (key == "walk_width") {
        cfg.walk_width = value.get<double>();
      } else if (key == "blur_sigma") {
        cfg.blur_sigma = value.get<double>();
      } else if (key == "extent") {
        cfg.extent = rect_from_json(value, "canvas config extent");
      } else {
        throw UsageError("canvas config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("canvas config: ") + e.what());
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("canvas config: ") + e.what());
  }
  return cfg;
}

lanekit::TokenConfig token_config_from_json(const json& j) {
  lanekit::TokenConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "n_points") {
        cfg.n_points = value.get<int>();
      } else if (key == "embed_dim") {
        cfg.embed_dim = value.get<int>();
      } else if (key == "category_count") {
        cfg.category_count = value.get<int>();
      } else if (key == "extent") {
        cfg.extent = rect_from_json(value, "token config extent");
      } else {
        throw UsageError("token config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("token config: ") + e.what());
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("token config: ") + e.what());
  }
  return cfg;
}

lanekit::SynthConfig synth_config_from_json(const json& j) {
  lanekit::SynthConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "roads") {
        cfg.roads = value.get<std::size_t>();
      } else if (key == "lanes_per_road") {
        cfg.lanes_per_road = value.get<std::size_t>();
      } else if (key == "splits_per_lane") {
        cfg.splits_per_lane = value.get<std::size_t>();
      } else if (key == "curvature_min") {
        cfg.curvature_min = value.get<double>();
      } else if (key == "curvature_max") {
        cfg.curvature_max = value.get<double>();
      } else if (key == "crossings") {
        cfg.crossings = value.get<std::size_t>();
      } else if (key == "lane_width") {
        cfg.lane_width = value.get<double>();
      } else if (key == "points_per_segment") {
        cfg.points_per_segment = value.get<std::size_t>();
      } else if (key == "extent") {
        cfg.extent = rect_from_json(value, "synth config extent");
      } else {
        throw UsageError("synth config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("synth config: ") + e.what());
  }
  return cfg;
}

lanekit::EvalConfig eval_config_from_json(const json& j) {
  lanekit::EvalConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "lane_thresholds") {
        cfg.lane_thresholds = value.get<std::vector<double>>();
      } else if (key == "ped_thresholds") {
        cfg.ped_thresholds = value.get<std::vector<double>>();
      } else {
        throw UsageError("eval config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("eval config: ") + e.what());
  }
  return cfg;
}

json matrix_to_json(const lanekit::topo::Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit(const json& payload) { std::cout << payload.dump(2) << "\n"; }

struct GlobalFlags {
  std::uint64_t seed = 0;
  std::string config;
  std::string out;
};

void require_out(const GlobalFlags& g, const std::string& cmd) {
  if (g.out.empty()) throw UsageError(cmd + ": --out is required");
}

void run_encode(const GlobalFlags& g, const std::string& scene_path,
                const std::string& canvas_config) {
  require_out(g, "encode");
  const std::string cfg_text = !canvas_config.empty() ? canvas_config : g.config;
  const lanekit::CanvasConfig cfg =
      cfg_text.empty() ? lanekit::CanvasConfig{} : canvas_config_from_json(parse_config(cfg_text, "canvas config"));

  const lanekit::SceneFile scene = lanekit::load_scene(scene_path);
  const lanekit::SdMapLocal sd = scene.sd_map.value_or(lanekit::SdMapLocal{});
  const lanekit::CanvasStack canvas = lanekit::rasterize(sd, cfg);

  std::filesystem::create_directories(g.out);
  const std::string tensor_path = g.out + "/canvas.lgt";
  lanekit::Tensor t;
  t.dims = {static_cast<std::uint32_t>(lanekit::CanvasStack::kChannels),
            static_cast<std::uint32_t>(cfg.height_px), static_cast<std::uint32_t>(cfg.width_px)};
  t.data = canvas.data();
  lanekit::write_tensor(t, tensor_path);

  const char* names[lanekit::CanvasStack::kChannels] = {"road",      "road_blur", "sidewalk",
                                                        "crosswalk", "dx",        "dy"};
  const std::size_t plane = static_cast<std::size_t>(cfg.height_px) * cfg.width_px;
  json images = json::array();
  for (int ch = 0; ch < lanekit::CanvasStack::kChannels; ++ch) {
    const auto begin = canvas.data().begin() + static_cast<std::ptrdiff_t>(ch * plane);
    const std::vector<float> slice(begin, begin + static_cast<std::ptrdiff_t>(plane));
    const bool signed_channel = ch >= lanekit::CanvasStack::kDx;
    const std::string path = g.out + "/" + names[ch] + ".pgm";
    lanekit::write_pgm(slice, static_cast<std::size_t>(cfg.width_px),
                       static_cast<std::size_t>(cfg.height_px), signed_channel ? -1.0 : 0.0, 1.0,
                       path);
    images.push_back(path);
  }

  emit({{"tensor", tensor_path},
        {"images", images},
        {"channels", lanekit::CanvasStack::kChannels},
        {"height_px", cfg.height_px},
        {"width_px", cfg.width_px}});
}

void run_tokenize(const GlobalFlags& g, const std::string& scene_path) {
  require_out(g, "tokenize");
  const lanekit::TokenConfig cfg =
      g.config.empty() ? lanekit::TokenConfig{}
                       : token_config_from_json(parse_config(g.config, "token config"));
  const lanekit::SceneFile scene = lanekit::load_scene(scene_path);
  if (!scene.sd_map || scene.sd_map->elements.empty()) {
    throw std::runtime_error(scene_path + ": scene has no SD elements to tokenize");
  }
  const std::vector<lanekit::SdToken> tokens = lanekit::tokenize(*scene.sd_map, cfg);

  lanekit::Tensor t;
  t.dims = {static_cast<std::uint32_t>(tokens.size()),
            static_cast<std::uint32_t>(cfg.token_dim())};
  t.data.reserve(tokens.size() * static_cast<std::size_t>(cfg.token_dim()));
  for (const lanekit::SdToken& tok : tokens) {
    for (const double v : tok) t.data.push_back(static_cast<float>(v));
  }
  lanekit::write_tensor(t, g.out);
  emit({{"out", g.out},
        {"elements", tokens.size()},
        {"token_dim", cfg.token_dim()}});
}

void run_perturb(const GlobalFlags& g, const std::string& scene_path, const std::string& spec,
                 const std::optional<int>& level) {
  require_out(g, "perturb");
  if (spec.empty() && !level) throw UsageError("perturb: pass one of --noise or --level");
  lanekit::NoiseConfig cfg;
  try {
    cfg = level ? lanekit::noise_level(*level) : lanekit::parse_noise_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("perturb: ") + e.what());
  }

  lanekit::SceneFile scene = lanekit::load_scene(scene_path);
  if (!scene.sd_map) {
    throw std::runtime_error(scene_path + ": scene has no sd_map to perturb");
  }
  const std::optional<lanekit::RigidTransform> t = lanekit::draw_rigid_noise(cfg, g.seed);
  scene.sd_map = lanekit::perturb(*scene.sd_map, cfg, g.seed);
  lanekit::save_scene(scene, g.out);

  json payload = {{"out", g.out},
                  {"spec", cfg.to_spec()},
                  {"seed", g.seed},
                  {"applied", t.has_value()}};
  if (t) {
    payload["rotation_deg"] = t->angle_rad * 180.0 / M_PI;
    payload["shift_m"] = json::array({t->shift.x, t->shift.y});
  }
  emit(payload);
}

void run_eval(const GlobalFlags& g, const std::string& pred_path, const std::string& gt_path) {
  const lanekit::EvalConfig cfg =
      g.config.empty() ? lanekit::EvalConfig{}
                       : eval_config_from_json(parse_config(g.config, "eval config"));
  const lanekit::SceneFile pred = lanekit::load_scene(pred_path);
  const lanekit::SceneFile gt = lanekit::load_scene(gt_path);
  const lanekit::MetricsReport report = lanekit::evaluate(pred, gt, cfg);

  const auto class_json = [](const lanekit::ClassEval& c) {
    json arr = json::array();
    for (const lanekit::ThresholdStats& s : c.per_threshold) {
      arr.push_back({{"threshold", s.threshold},
                     {"ap", s.ap},
                     {"tp", s.true_positives},
                     {"fp", s.false_positives},
                     {"fn", s.false_negatives}});
    }
    return arr;
  };
  json payload = {{"ap_lane", report.lanes.ap},
                  {"ap_ped", report.peds.ap},
                  {"map", report.map},
                  {"lane_thresholds", class_json(report.lanes)},
                  {"ped_thresholds", class_json(report.peds)},
                  {"top", {{"available", report.top.available}, {"value", report.top.value}}}};
  emit(payload);
}

void run_topo_demo(const GlobalFlags& g, int n, int d) {
  if (n < 1 || d < 1) throw UsageError("topo-demo: --n and --d must be at least 1");
  if (n > 512 || d > 512) throw UsageError("topo-demo: --n and --d are capped at 512");
  namespace topo = lanekit::topo;
  const Eigen::Index de = std::max<Eigen::Index>(1, d / 2);
  const topo::TopoBlockParams params = topo::random_block_params(d, de, g.seed + 1);

  lanekit::DeterministicRng rng(g.seed);
  topo::Matrix f(n, d);
  for (Eigen::Index i = 0; i < f.size(); ++i) f.data()[i] = rng.uniform(-1.0, 1.0);
  topo::Matrix upstream(n, d);
  for (Eigen::Index i = 0; i < upstream.size(); ++i) upstream.data()[i] = rng.uniform(-1.0, 1.0);

  const topo::Matrix m = topo::connection_scores(f, params);
  const topo::Matrix out = topo::topo_enhance(f, m, params);
  const topo::TopoBlockGrads grads = topo::topo_block_backward(f, m, params, upstream);
  const std::size_t budget = static_cast<std::size_t>(n) * static_cast<std::size_t>(d) > 2048
                                 ? std::size_t{256}
                                 : std::size_t{0};
  const topo::GradCheckReport report = topo::grad_check(f, m, params, upstream, 1e-5, budget,
                                                        g.seed + 2);

  json payload = {{"n", n},
                  {"d", d},
                  {"d_e", de},
                  {"max_rel_err", report.max_rel_err},
                  {"coords_checked", report.coords_checked},
                  {"coords_skipped", report.coords_skipped}};
  if (static_cast<std::size_t>(n) * static_cast<std::size_t>(d) <= 4) {
    payload["f"] = matrix_to_json(f);
    payload["m"] = matrix_to_json(m);
    payload["f_succ"] = matrix_to_json(m * f);
    payload["f_prede"] = matrix_to_json(m.transpose() * f);
    payload["output"] = matrix_to_json(out);
    payload["d_f"] = matrix_to_json(grads.d_f);
    payload["d_m"] = matrix_to_json(grads.d_m);
  }
  emit(payload);
}

void run_synth(const GlobalFlags& g, const std::string& pred_out, double lateral_std,
               double drop_prob, double edge_flip_prob,
               const std::optional<std::uint64_t>& degrade_seed) {
  require_out(g, "synth");
  lanekit::SynthConfig cfg =
      g.config.empty() ? lanekit::SynthConfig{}
                       : synth_config_from_json(parse_config(g.config, "synth config"));
  cfg.seed = g.seed;
  lanekit::SceneFile scene;
  try {
    scene = lanekit::synth_scene(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("synth config: ") + e.what());
  }
  lanekit::save_scene(scene, g.out);

  json payload = {{"out", g.out},
                  {"scene_id", scene.scene_id},
                  {"segments", scene.segments.size()},
                  {"edges", scene.edge_set().size()}};
  if (!pred_out.empty()) {
    lanekit::DegradeConfig dc;
    dc.lateral_std = lateral_std;
    dc.drop_prob = drop_prob;
    dc.edge_flip_prob = edge_flip_prob;
    dc.seed = degrade_seed.value_or(g.seed);
    try {
      dc.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("synth: ") + e.what());
    }
    const lanekit::SceneFile pred = lanekit::degrade(scene, dc);
    lanekit::save_scene(pred, pred_out);
    payload["pred_out"] = pred_out;
    payload["pred_segments"] = pred.segments.size();
  }
  emit(payload);
}

void run_render(const GlobalFlags& g, const std::string& scene_path, const std::string& pred_path,
                double resolution) {
  require_out(g, "render");
  if (!(resolution > 0.0)) throw UsageError("render: --resolution must be positive");
  const lanekit::SceneFile gt = lanekit::load_scene(scene_path);
  std::optional<lanekit::SceneFile> pred;
  if (!pred_path.empty()) pred = lanekit::load_scene(pred_path);
  const lanekit::ImageRgb img =
      lanekit::render_scene(gt, pred ? &*pred : nullptr, resolution);
  lanekit::write_png(img, g.out);
  emit({{"out", g.out}, {"width", img.width}, {"height", img.height}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lane-segment scene toolkit: SD-map encoding, metrics, synthesis"};
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--seed", g.seed, "Seed for every stochastic step");
  app.add_option("--config", g.config, "Inline JSON overriding the subcommand's defaults");
  app.add_option("--out", g.out, "Output file (or directory for encode)");

  std::string scene_path, canvas_config, noise_spec, pred_path, gt_path, pred_out;
  std::optional<int> noise_level_flag;
  int demo_n = 6, demo_d = 16;
  double lateral_std = 0.0, drop_prob = 0.0, edge_flip_prob = 0.0, resolution = 0.125;
  std::optional<std::uint64_t> degrade_seed;

  CLI::App* encode = app.add_subcommand("encode", "Rasterize a scene's SD map into a canvas");
  encode->add_option("--scene", scene_path, "Scene JSON file")->required();
  encode->add_option("--canvas-config", canvas_config, "Inline canvas JSON overrides");
  encode->callback([&] { run_encode(g, scene_path, canvas_config); });

  CLI::App* tokenize = app.add_subcommand("tokenize", "Embed SD polylines as token vectors");
  tokenize->add_option("--scene", scene_path, "Scene JSON file")->required();
  tokenize->callback([&] { run_tokenize(g, scene_path); });

  CLI::App* perturb = app.add_subcommand("perturb", "Apply rigid localization noise to the SD map");
  perturb->add_option("--scene", scene_path, "Scene JSON file")->required();
  CLI::Option* o_noise = perturb->add_option("--noise", noise_spec, "Noise spec string");
  CLI::Option* o_level = perturb->add_option("--level", noise_level_flag, "Noise level 0-8");
  o_noise->excludes(o_level);
  o_level->excludes(o_noise);
  perturb->callback([&] { run_perturb(g, scene_path, noise_spec, noise_level_flag); });

  CLI::App* eval = app.add_subcommand("eval", "Score predictions against ground truth");
  eval->add_option("--pred", pred_path, "Prediction scene JSON")->required();
  eval->add_option("--gt", gt_path, "Ground-truth scene JSON")->required();
  eval->callback([&] { run_eval(g, pred_path, gt_path); });

  CLI::App* demo = app.add_subcommand("topo-demo", "Run the connectivity block and its grad check");
  demo->add_option("--n", demo_n, "Number of queries");
  demo->add_option("--d", demo_d, "Feature width");
  demo->callback([&] { run_topo_demo(g, demo_n, demo_d); });

  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic ground-truth scene");
  synth->add_option("--pred-out", pred_out, "Also write a degraded prediction scene here");
  synth->add_option("--lateral-std", lateral_std, "Degrade: lateral jitter std in meters");
  synth->add_option("--drop-prob", drop_prob, "Degrade: segment drop probability");
  synth->add_option("--edge-flip-prob", edge_flip_prob, "Degrade: edge score flip probability");
  synth->add_option("--degrade-seed", degrade_seed, "Degrade seed (defaults to --seed)");
  synth->callback([&] {
    run_synth(g, pred_out, lateral_std, drop_prob, edge_flip_prob, degrade_seed);
  });

  CLI::App* render = app.add_subcommand("render", "Plot a scene (plus optional overlay) as PNG");
  render->add_option("--scene", scene_path, "Scene JSON file")->required();
  render->add_option("--pred", pred_path, "Prediction scene JSON to overlay");
  render->add_option("--resolution", resolution, "Meters per pixel");
  render->callback([&] { run_render(g, scene_path, pred_path, resolution); });

  for (CLI::App* sub : {encode, tokenize, perturb, eval, demo, synth, render}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
