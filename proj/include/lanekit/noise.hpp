#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lanekit/sd_map.hpp"

namespace lanekit {

// Rigid SD-map noise: rotation bound (uniform), per-axis shift std (Gaussian)
// and the probability that the perturbation fires at all.
struct NoiseConfig {
  double rot_max_deg = 0.0;
  double shift_std_m = 0.0;
  double prob = 0.0;

  void validate() const;
  std::string to_spec() const;  // "rot5_std5_prob0.5" / "no_noise"
};

// Accepts "rot<float>_std<float>_prob<float>" or the literal "no_noise".
NoiseConfig parse_noise_spec(const std::string& spec);

// The nine fixed test configurations, level 0 (no_noise) through level 8
// (rot5_std30_prob1).
NoiseConfig noise_level(int level);
inline constexpr int kNoiseLevelCount = 9;

// Draws the per-map transform. Stream order is fixed: gate, angle, dx, dy
// (all four are always consumed). Returns nullopt when the gate fails.
std::optional<RigidTransform> draw_rigid_noise(const NoiseConfig& cfg, std::uint64_t seed);

// Applies one rigid transform to every element with probability cfg.prob;
// otherwise returns the map unchanged. Deterministic given seed.
SdMapLocal perturb(const SdMapLocal& map, const NoiseConfig& cfg, std::uint64_t seed);

}  // namespace lanekit
