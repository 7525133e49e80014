#pragma once

#include <string>

#include <chirality/double_six.hpp>

namespace chiral::tools {

// Two panels (first and second image) with data points, wall conics,
// boundary vertices and a coarse shading of the chiral epipole region.
std::string region_svg(const PairSet& pairs, const RegionReport& report, int shading_cells = 48);

}  // namespace chiral::tools
