#pragma once

#include <span>
#include <utility>
#include <vector>

#include "npr/camera.hpp"
#include "npr/contours.hpp"
#include "npr/framebuffer.hpp"
#include "npr/spline.hpp"

namespace npr {

struct LineStyle {
  Smoothing smoothing = Smoothing::None;
  int samples = 4;  // per segment
  double width = 1.0;  // pixels
  Color color{0.0, 0.0, 0.0};
  bool antialias = true;
  /// A line pixel passes when its depth <= stored depth + bias.
  double depth_bias = 1e-3;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Smoothed polyline projected to the screen. Closed polylines do not
/// repeat their first point.
std::vector<ScreenPoint> project_polyline(const Polyline& line, const Camera& camera,
                                          const LineStyle& style);

/// Draws every polyline, depth-tested against `target` without writing depth.
/// Segments touching a clipped point are skipped. Throws DimensionMismatch.
void render_lines(const ContourSet& contours, const Camera& camera, const LineStyle& style,
                  Framebuffer& target);

using ScreenSegment = std::pair<ScreenPoint, ScreenPoint>;

/// Segments without anti-aliasing, stepping along the major axis.
void draw_segments_aliased(Framebuffer& target, std::span<const ScreenSegment> segments,
                           const Color& color, double width, double depth_bias);

}  // namespace npr
