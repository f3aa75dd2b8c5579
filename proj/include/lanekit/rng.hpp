#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lanekit {

// Deterministic draws on top of std::mt19937_64, whose output sequence is
// fixed by the C++ standard. The distribution transforms live here because
// std::uniform_real_distribution / std::normal_distribution are not
// bit-specified across standard libraries.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // [0, 1), 53-bit resolution
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  // Box-Muller; always consumes exactly two raw draws, the sine branch is
  // discarded to keep the stream layout fixed.
  double normal(double mean, double stddev) {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log() finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * (r * std::cos(2.0 * M_PI * u2));
  }

  // [0, n)
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace lanekit
