#pragma once

#include <string>
#include <vector>

#include "nilorb/building.hpp"

namespace nilorb::cli {

struct SvgMark {
  ApartmentPoint point;
  std::string label;
};

/// Rank-2 apartment (sl3 projected onto its sum-zero plane, sp4 drawn directly):
/// affine root hyperplanes alpha = k for |k| <= radius, the fundamental alcove,
/// the walls of `highlight` and the marked points. Throws Error(InvalidArgument) for other ranks.
std::string render_apartment_svg(const RootDatum& rd, const std::vector<SvgMark>& marks,
                                 const std::vector<AffineSubspace>& highlight = {}, int radius = 2);

}  // namespace nilorb::cli
