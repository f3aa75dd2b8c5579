#pragma once

#include <string>
#include <vector>

#include "lanekit/geometry.hpp"

namespace lanekit {

enum class SdCategory { kRoad, kSidewalk, kCrosswalk };

const char* to_string(SdCategory c);
SdCategory sd_category_from_string(const std::string& s);

struct SdElement {
  SdCategory category = SdCategory::kRoad;
  Polyline polyline;
};

// Categorized SD polylines in the ego frame. The range is the nominal
// coverage (default twice the perception extent); elements are stored
// unclipped, consumers clip as needed.
struct SdMapLocal {
  std::vector<SdElement> elements;
  Rect range{-100.0, 100.0, -50.0, 50.0};
};

}  // namespace lanekit
