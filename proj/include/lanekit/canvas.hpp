#pragma once

#include <utility>
#include <vector>

#include "lanekit/sd_map.hpp"

namespace lanekit {

// BEV canvas geometry. Row r spans x in [x_max-(r+1)*res, x_max-r*res]
// (row 0 is far forward), column c spans y in [y_max-(c+1)*res, y_max-c*res]
// (column 0 is far left).
struct CanvasConfig {
  int height_px = 800;  // along x
  int width_px = 400;   // along y
  double resolution = 0.125;
  double road_width = 6.0;
  double walk_width = 1.25;
  double blur_sigma = 2.0;  // pixels
  Rect extent{-50.0, 50.0, -25.0, 25.0};

  void validate() const;
  double row_center_x(int r) const { return extent.x_max - (r + 0.5) * resolution; }
  double col_center_y(int c) const { return extent.y_max - (c + 0.5) * resolution; }
};

// 6 x H x W float raster, channel-major.
class CanvasStack {
 public:
  static constexpr int kChannels = 6;
  enum Channel {
    kRoad = 0,
    kRoadBlur = 1,
    kSidewalk = 2,
    kCrosswalk = 3,
    kDx = 4,
    kDy = 5,
  };

  CanvasStack(int height, int width)
      : height_(height), width_(width),
        data_(static_cast<std::size_t>(kChannels) * height * width, 0.0f) {}

  int height() const { return height_; }
  int width() const { return width_; }
  float at(int ch, int r, int c) const { return data_[index(ch, r, c)]; }
  float& at(int ch, int r, int c) { return data_[index(ch, r, c)]; }
  const std::vector<float>& data() const { return data_; }

 private:
  std::size_t index(int ch, int r, int c) const {
    return (static_cast<std::size_t>(ch) * height_ + r) * width_ + c;
  }
  int height_;
  int width_;
  std::vector<float> data_;
};

// Draws the SD map onto the 6-channel canvas: hard binary masks via exact
// point-to-segment distance at pixel centers (threshold width/2), a Gaussian
// blur of the road mask, and cos/sin of the nearest covering road segment's
// direction. Segments are clipped to the extent before drawing.
CanvasStack rasterize(const SdMapLocal& map, const CanvasConfig& cfg);

// The dx/dy grids alone (row-major H*W), as produced for channels 4 and 5.
std::pair<std::vector<float>, std::vector<float>> direction_channels(const SdMapLocal& map,
                                                                     const CanvasConfig& cfg);

}  // namespace lanekit
