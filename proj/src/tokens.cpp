#include "lanekit/tokens.hpp"

#include <cmath>
#include <stdexcept>

namespace lanekit {

void TokenConfig::validate() const {
  if (n_points < 2) throw std::invalid_argument("token n_points must be >= 2");
  if (embed_dim < 4 || embed_dim % 4 != 0) {
    throw std::invalid_argument("token embed_dim must be a positive multiple of 4");
  }
  if (category_count < 3) throw std::invalid_argument("token category_count must be >= 3");
  if (!extent.well_ordered()) throw std::invalid_argument("token extent must be well ordered");
}

namespace {

// embed_dim/2 values for one normalized coordinate: sin/cos pairs over
// geometrically spaced frequencies, 1 through 10000.
void embed_coordinate(double u, int half_dim, std::vector<double>& out) {
  const int n_freq = half_dim / 2;
  for (int q = 0; q < n_freq; ++q) {
    const double exponent = n_freq > 1 ? static_cast<double>(q) / (n_freq - 1) : 0.0;
    const double omega = std::pow(10000.0, exponent);
    out.push_back(std::sin(omega * u));
    out.push_back(std::cos(omega * u));
  }
}

}  // namespace

std::vector<SdToken> tokenize(const SdMapLocal& map, const TokenConfig& cfg) {
  cfg.validate();
  const double x_span = cfg.extent.width_x();
  const double y_span = cfg.extent.width_y();

  std::vector<SdToken> tokens;
  tokens.reserve(map.elements.size());
  for (const SdElement& e : map.elements) {
    const Polyline pts = resample_polyline(e.polyline, static_cast<std::size_t>(cfg.n_points));
    SdToken token;
    token.reserve(static_cast<std::size_t>(cfg.token_dim()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double x_norm = (pts[i].x - cfg.extent.x_min) / x_span;
      const double y_norm = (pts[i].y - cfg.extent.y_min) / y_span;
      embed_coordinate(x_norm, cfg.embed_dim / 2, token);
      embed_coordinate(y_norm, cfg.embed_dim / 2, token);
    }
    for (int k = 0; k < cfg.category_count; ++k) {
      token.push_back(k == static_cast<int>(e.category) ? 1.0 : 0.0);
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

}  // namespace lanekit
