#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "npr/contours.hpp"
#include "npr/curvature.hpp"
#include "npr/image.hpp"
#include "npr/lapped.hpp"

namespace npr {

/// Shortest representation that reads back to the same double.
std::string format_double(double v);

/// Header "id,k1,k2,e1x,e1y,e1z,e2x,e2y,e2z,a,b,c,d", one row per vertex.
void write_curvature_csv(const CurvatureField& field, std::ostream& out);

/// {"contours": [{"name", "polylines": [{"closed", "points": [{"p", "n", "ndotv",
/// "strength", "edge", "t"}]}]}]}. Missing attributes are written as null.
void write_contours_json(const std::vector<const ContourSet*>& sets, std::ostream& out);

/// {"patches": [{"seed", "faces": [...], "uvs": [[[u, v] x 3] per face]}]}.
void write_patches_json(const std::vector<Patch>& patches, std::ostream& out);

/// Debug atlas: each patch's UV layout scaled into its own grid cell,
/// triangles filled with a per-patch tint and outlined.
ImageBuffer render_uv_atlas(const std::vector<Patch>& patches, int size);

}  // namespace npr
