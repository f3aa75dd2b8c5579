#pragma once

#include <vector>

#include "lanekit/sd_map.hpp"

namespace lanekit {

// Per-polyline token layout: n_points sinusoidal point embeddings of
// embed_dim each, then a one-hot category suffix of category_count entries.
struct TokenConfig {
  int n_points = 11;
  int embed_dim = 32;      // per point; split evenly between x and y, must be divisible by 4
  int category_count = 3;  // K
  Rect extent{-100.0, 100.0, -50.0, 50.0};

  int token_dim() const { return n_points * embed_dim + category_count; }
  void validate() const;
};

using SdToken = std::vector<double>;

// Resamples each element to n_points, normalizes coordinates to [0,1] over
// cfg.extent, embeds x and y independently with alternating sin/cos terms at
// geometric frequencies from 1 to 10000, and appends the one-hot category.
// Output order matches input element order.
std::vector<SdToken> tokenize(const SdMapLocal& map, const TokenConfig& cfg);

}  // namespace lanekit
