#include "lanekit/sd_map.hpp"

#include <stdexcept>

namespace lanekit {

const char* to_string(SdCategory c) {
  switch (c) {
    case SdCategory::kRoad: return "road";
    case SdCategory::kSidewalk: return "sidewalk";
    case SdCategory::kCrosswalk: return "crosswalk";
  }
  return "road";
}

SdCategory sd_category_from_string(const std::string& s) {
  if (s == "road") return SdCategory::kRoad;
  if (s == "sidewalk") return SdCategory::kSidewalk;
  if (s == "crosswalk") return SdCategory::kCrosswalk;
  throw std::invalid_argument("unknown SD category '" + s + "'");
}

}  // namespace lanekit
