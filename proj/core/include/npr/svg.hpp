#pragma once

#include <string>
#include <vector>

#include "npr/camera.hpp"
#include "npr/contours.hpp"
#include "npr/lines.hpp"

namespace npr {

/// SVG 1.1 document with one <path> per polyline, coordinates in viewport
/// pixels with three decimals. Clipped points break a path into subpaths;
/// unbroken closed polylines end with "Z".
std::string export_svg(const ContourSet& contours, const Camera& camera, const LineStyle& style);
std::string export_svg(const std::vector<const ContourSet*>& sets, const Camera& camera,
                       const std::vector<LineStyle>& styles);

}  // namespace npr
