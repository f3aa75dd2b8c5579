#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lanekit/scene.hpp"

namespace lanekit {

struct ImageRgb {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, 3 bytes per pixel

  static ImageRgb filled(std::size_t width, std::size_t height, std::uint8_t r, std::uint8_t g,
                         std::uint8_t b);
  void set(std::size_t x, std::size_t y, std::uint8_t r, std::uint8_t g, std::uint8_t b);
};

// Binary PGM (P5), one byte per value; inputs below lo map to 0, above hi
// to 255, linear in between.
void write_pgm(const std::vector<float>& values, std::size_t width, std::size_t height,
               double lo, double hi, const std::string& path);

// 8-bit RGB PNG (deterministic bytes: fixed zlib level, filter 0 rows).
std::string png_bytes(const ImageRgb& img);
void write_png(const ImageRgb& img, const std::string& path);

// Top-down plot over gt.extent: row 0 is the far forward edge (+x), column 0
// the far left edge (+y). SD polylines draw as road blue, sidewalk dark
// gray, crosswalk green; ground-truth lanes gray with purple crossings;
// prediction overlay (optional) red lanes with orange crossings.
ImageRgb render_scene(const SceneFile& gt, const SceneFile* pred = nullptr,
                      double resolution = 0.125);

}  // namespace lanekit
