#include "lanekit/image.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace lanekit {

ImageRgb ImageRgb::filled(std::size_t width, std::size_t height, std::uint8_t r, std::uint8_t g,
                          std::uint8_t b) {
  ImageRgb img;
  img.width = width;
  img.height = height;
  img.pixels.resize(width * height * 3);
  for (std::size_t i = 0; i < width * height; ++i) {
    img.pixels[3 * i] = r;
    img.pixels[3 * i + 1] = g;
    img.pixels[3 * i + 2] = b;
  }
  return img;
}

void ImageRgb::set(std::size_t x, std::size_t y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const std::size_t i = (y * width + x) * 3;
  pixels[i] = r;
  pixels[i + 1] = g;
  pixels[i + 2] = b;
}

void write_pgm(const std::vector<float>& values, std::size_t width, std::size_t height,
               double lo, double hi, const std::string& path) {
  if (values.size() != width * height) {
    throw std::invalid_argument("pgm: value count does not match dimensions");
  }
  if (!(hi > lo)) throw std::invalid_argument("pgm: scale range must be non-empty");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open file for writing");
  out << "P5\n" << width << " " << height << "\n255\n";
  for (const float v : values) {
    const double t = (static_cast<double>(v) - lo) / (hi - lo);
    const double scaled = std::clamp(t, 0.0, 1.0) * 255.0;
    out.put(static_cast<char>(static_cast<int>(std::lround(scaled))));
  }
  if (!out) throw std::runtime_error(path + ": write failed");
}

namespace {

void append_u32_be(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>((v >> 24) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

void append_chunk(std::string& out, const char type[4], const std::string& payload) {
  append_u32_be(out, static_cast<std::uint32_t>(payload.size()));
  const std::size_t crc_start = out.size();
  out.append(type, 4);
  out += payload;
  const auto crc = crc32(0L, reinterpret_cast<const Bytef*>(out.data() + crc_start),
                         static_cast<uInt>(4 + payload.size()));
  append_u32_be(out, static_cast<std::uint32_t>(crc));
}

}  // namespace

std::string png_bytes(const ImageRgb& img) {
  if (img.width == 0 || img.height == 0 || img.pixels.size() != img.width * img.height * 3) {
    throw std::invalid_argument("png: empty image or pixel buffer size mismatch");
  }

  std::string ihdr;
  append_u32_be(ihdr, static_cast<std::uint32_t>(img.width));
  append_u32_be(ihdr, static_cast<std::uint32_t>(img.height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(2);  // color type: truecolor
  ihdr.push_back(0);  // compression
  ihdr.push_back(0);  // filter
  ihdr.push_back(0);  // interlace

  std::string raw;
  raw.reserve(img.height * (1 + img.width * 3));
  for (std::size_t y = 0; y < img.height; ++y) {
    raw.push_back(0);  // filter type none
    raw.append(reinterpret_cast<const char*>(&img.pixels[y * img.width * 3]), img.width * 3);
  }
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::string idat(bound, '\0');
  if (compress2(reinterpret_cast<Bytef*>(idat.data()), &bound,
                reinterpret_cast<const Bytef*>(raw.data()), static_cast<uLong>(raw.size()),
                6) != Z_OK) {
    throw std::runtime_error("png: deflate failed");
  }
  idat.resize(bound);

  std::string out("\x89PNG\r\n\x1a\n", 8);
  append_chunk(out, "IHDR", ihdr);
  append_chunk(out, "IDAT", idat);
  append_chunk(out, "IEND", "");
  return out;
}

void write_png(const ImageRgb& img, const std::string& path) {
  const std::string bytes = png_bytes(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open file for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error(path + ": write failed");
}

namespace {

struct Color {
  std::uint8_t r, g, b;
};

constexpr Color kRoad{70, 130, 230};
constexpr Color kSidewalk{70, 70, 70};
constexpr Color kCrosswalk{60, 170, 90};
constexpr Color kGtLane{140, 140, 140};
constexpr Color kGtPed{150, 80, 200};
constexpr Color kPredLane{220, 60, 60};
constexpr Color kPredPed{240, 150, 60};

class Plotter {
 public:
  Plotter(ImageRgb& img, const Rect& extent, double resolution)
      : img_(img), extent_(extent), res_(resolution) {}

  void polyline(const Polyline& line, Color c, int radius) {
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
      segment(line[i], line[i + 1], c, radius);
    }
  }

 private:
  void segment(Point2 a, Point2 b, Color c, int radius) {
    const double len = distance(a, b);
    const auto steps = static_cast<std::size_t>(std::ceil(len / (0.5 * res_))) + 1;
    for (std::size_t i = 0; i <= steps; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(steps);
      plot(a + t * (b - a), c, radius);
    }
  }

  void plot(Point2 p, Color c, int radius) {
    const double row = (extent_.x_max - p.x) / res_ - 0.5;
    const double col = (extent_.y_max - p.y) / res_ - 0.5;
    const auto r0 = static_cast<long>(std::lround(row));
    const auto c0 = static_cast<long>(std::lround(col));
    for (long dr = -radius; dr <= radius; ++dr) {
      for (long dc = -radius; dc <= radius; ++dc) {
        const long r = r0 + dr;
        const long cc = c0 + dc;
        if (r < 0 || cc < 0 || r >= static_cast<long>(img_.height) ||
            cc >= static_cast<long>(img_.width)) {
          continue;
        }
        img_.set(static_cast<std::size_t>(cc), static_cast<std::size_t>(r), c.r, c.g, c.b);
      }
    }
  }

  ImageRgb& img_;
  Rect extent_;
  double res_;
};

void draw_segments(Plotter& plot, const SceneFile& scene, Color lane, Color ped) {
  for (const SceneSegment& s : scene.segments) {
    const Color c = s.category == SegmentCategory::kLane ? lane : ped;
    plot.polyline(s.segment.left_boundary(), c, 0);
    plot.polyline(s.segment.right_boundary(), c, 0);
    plot.polyline(s.segment.centerline(), c, 1);
  }
}

}  // namespace

ImageRgb render_scene(const SceneFile& gt, const SceneFile* pred, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("render: resolution must be positive");
  if (!gt.extent.well_ordered()) throw std::invalid_argument("render: extent not well ordered");
  const auto height = static_cast<std::size_t>(std::ceil(gt.extent.width_x() / resolution));
  const auto width = static_cast<std::size_t>(std::ceil(gt.extent.width_y() / resolution));
  ImageRgb img = ImageRgb::filled(width, height, 255, 255, 255);
  Plotter plot(img, gt.extent, resolution);

  if (gt.sd_map) {
    for (const SdElement& e : gt.sd_map->elements) {
      Color c = kRoad;
      if (e.category == SdCategory::kSidewalk) c = kSidewalk;
      if (e.category == SdCategory::kCrosswalk) c = kCrosswalk;
      plot.polyline(e.polyline, c, 1);
    }
  }
  draw_segments(plot, gt, kGtLane, kGtPed);
  if (pred) draw_segments(plot, *pred, kPredLane, kPredPed);
  return img;
}

}  // namespace lanekit
