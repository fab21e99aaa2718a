#pragma once

#include "plasmoscan/detect.hpp"
#include "plasmoscan/imgcore.hpp"

namespace plasmoscan {

/// Draws contour outlines onto a copy of the image: flagged contours in
/// red with their local_value printed beside the centroid, rejected ones
/// in blue. When nothing is flagged a small green badge marks the
/// top-left corner. Rendering is deterministic.
ColorImage render_overlay(const ColorImage& img, const LabelMap& labels,
                          const std::vector<ContourVerdict>& contours);

}  // namespace plasmoscan
