#include "lanekit/noise.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lanekit/rng.hpp"

namespace lanekit {

void NoiseConfig::validate() const {
  if (!(rot_max_deg >= 0.0)) throw std::invalid_argument("noise rot must be >= 0");
  if (!(shift_std_m >= 0.0)) throw std::invalid_argument("noise std must be >= 0");
  if (!(prob >= 0.0 && prob <= 1.0)) throw std::invalid_argument("noise prob must lie in [0,1]");
}

namespace {

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double parse_field(const std::string& token, const std::string& key) {
  if (token.rfind(key, 0) != 0) {
    throw std::invalid_argument("noise spec: expected token starting with '" + key + "', got '" +
                                token + "'");
  }
  const std::string num = token.substr(key.size());
  double value = 0.0;
  const char* begin = num.data();
  const char* end = num.data() + num.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || num.empty()) {
    throw std::invalid_argument("noise spec: '" + key + "' expects a number, got '" + num + "'");
  }
  return value;
}

}  // namespace

std::string NoiseConfig::to_spec() const {
  if (rot_max_deg == 0.0 && shift_std_m == 0.0 && prob == 0.0) return "no_noise";
  return "rot" + format_number(rot_max_deg) + "_std" + format_number(shift_std_m) + "_prob" +
         format_number(prob);
}

NoiseConfig parse_noise_spec(const std::string& spec) {
  if (spec == "no_noise") return NoiseConfig{0.0, 0.0, 0.0};

  std::array<std::string, 3> tokens;
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t sep = spec.find('_', start);
    if (i < 2) {
      if (sep == std::string::npos) {
        throw std::invalid_argument("noise spec '" + spec +
                                    "': expected rot<r>_std<s>_prob<p> or no_noise");
      }
      tokens[i] = spec.substr(start, sep - start);
      start = sep + 1;
    } else {
      if (sep != std::string::npos) {
        throw std::invalid_argument("noise spec '" + spec + "': trailing tokens after prob");
      }
      tokens[i] = spec.substr(start);
    }
  }

  NoiseConfig cfg;
  cfg.rot_max_deg = parse_field(tokens[0], "rot");
  cfg.shift_std_m = parse_field(tokens[1], "std");
  cfg.prob = parse_field(tokens[2], "prob");
  cfg.validate();
  return cfg;
}

NoiseConfig noise_level(int level) {
  static const std::array<const char*, kNoiseLevelCount> kLevels = {
      "no_noise",
      "rot5_std2_prob0.5",
      "rot5_std5_prob0.5",
      "rot5_std7_prob0.5",
      "rot5_std10_prob0.5",
      "rot5_std20_prob0.5",
      "rot5_std30_prob0.5",
      "rot5_std20_prob1",
      "rot5_std30_prob1",
  };
  if (level < 0 || level >= kNoiseLevelCount) {
    throw std::invalid_argument("noise level " + std::to_string(level) + " out of range 0..8");
  }
  return parse_noise_spec(kLevels[static_cast<std::size_t>(level)]);
}

std::optional<RigidTransform> draw_rigid_noise(const NoiseConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  DeterministicRng rng(seed);
  const double gate = rng.uniform01();
  RigidTransform t;
  t.angle_rad = rng.uniform(-cfg.rot_max_deg, cfg.rot_max_deg) * M_PI / 180.0;
  t.shift.x = rng.normal(0.0, cfg.shift_std_m);
  t.shift.y = rng.normal(0.0, cfg.shift_std_m);
  if (gate < cfg.prob) return t;
  return std::nullopt;
}

SdMapLocal perturb(const SdMapLocal& map, const NoiseConfig& cfg, std::uint64_t seed) {
  const std::optional<RigidTransform> t = draw_rigid_noise(cfg, seed);
  if (!t) return map;
  SdMapLocal out;
  out.range = map.range;
  out.elements.reserve(map.elements.size());
  for (const SdElement& e : map.elements) {
    out.elements.push_back({e.category, e.polyline.transformed(*t)});
  }
  return out;
}

}  // namespace lanekit
