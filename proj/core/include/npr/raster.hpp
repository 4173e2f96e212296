#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "npr/animation.hpp"
#include "npr/camera.hpp"
#include "npr/framebuffer.hpp"
#include "npr/shading.hpp"

namespace npr {

/// Vertices are snapped to 1/256 pixel before coverage is decided.
inline constexpr int kSubpixel = 256;

inline std::int64_t snap_subpixel(double v) { return std::llround(v * kSubpixel); }

/// Walks the pixels whose centers a screen-space triangle covers under the
/// top-left fill rule and calls emit(x, y, barycentric). Triangles that are
/// counterclockwise on screen are front-facing; clockwise ones are skipped
/// when `cull_backfaces` is set.
template <class Emit>
void rasterize_triangle(const std::array<Vec2, 3>& screen, int width, int height,
                        bool cull_backfaces, Emit&& emit) {
  std::array<std::int64_t, 3> X, Y;
  for (int i = 0; i < 3; ++i) {
    X[i] = snap_subpixel(screen[i].x());
    Y[i] = snap_subpixel(screen[i].y());
  }
  auto edge = [&](int a, int b, std::int64_t px, std::int64_t py) {
    return (X[b] - X[a]) * (py - Y[a]) - (Y[b] - Y[a]) * (px - X[a]);
  };
  std::int64_t area = edge(0, 1, X[2], Y[2]);
  if (area == 0) return;
  // Positive area means clockwise on screen (y points down), i.e. a back face.
  if (area > 0 && cull_backfaces) return;
  std::array<int, 3> idx{0, 1, 2};
  if (area < 0) {
    std::swap(X[1], X[2]);
    std::swap(Y[1], Y[2]);
    std::swap(idx[1], idx[2]);
    area = -area;
  }
  // Edge k is opposite vertex k and runs from vertex k+1 to vertex k+2.
  std::array<bool, 3> top_left;
  std::array<std::int64_t, 3> step_x, step_y;
  for (int k = 0; k < 3; ++k) {
    const int a = (k + 1) % 3, b = (k + 2) % 3;
    const std::int64_t dx = X[b] - X[a], dy = Y[b] - Y[a];
    top_left[k] = dy < 0 || (dy == 0 && dx > 0);
    step_x[k] = -dy * kSubpixel;
    step_y[k] = dx * kSubpixel;
  }
  const std::int64_t half = kSubpixel / 2;
  auto first_pixel = [&](std::int64_t lo) {
    const std::int64_t v = lo - half;
    return static_cast<int>(v >= 0 ? (v + kSubpixel - 1) / kSubpixel : -((-v) / kSubpixel));
  };
  auto last_pixel = [&](std::int64_t hi) {
    const std::int64_t v = hi - half;
    return static_cast<int>(v >= 0 ? v / kSubpixel : -((-v + kSubpixel - 1) / kSubpixel));
  };
  const int x0 = std::max(0, first_pixel(std::min({X[0], X[1], X[2]})));
  const int x1 = std::min(width - 1, last_pixel(std::max({X[0], X[1], X[2]})));
  const int y0 = std::max(0, first_pixel(std::min({Y[0], Y[1], Y[2]})));
  const int y1 = std::min(height - 1, last_pixel(std::max({Y[0], Y[1], Y[2]})));
  if (x0 > x1 || y0 > y1) return;

  const std::int64_t px0 = static_cast<std::int64_t>(x0) * kSubpixel + half;
  const std::int64_t py0 = static_cast<std::int64_t>(y0) * kSubpixel + half;
  std::array<std::int64_t, 3> row;
  for (int k = 0; k < 3; ++k) row[k] = edge((k + 1) % 3, (k + 2) % 3, px0, py0);
  const double inv_area = 1.0 / static_cast<double>(area);
  for (int y = y0; y <= y1; ++y) {
    std::array<std::int64_t, 3> w = row;
    for (int x = x0; x <= x1; ++x) {
      bool inside = true;
      for (int k = 0; k < 3 && inside; ++k) inside = w[k] > 0 || (w[k] == 0 && top_left[k]);
      if (inside) {
        Vec3 bary;
        for (int k = 0; k < 3; ++k) bary[idx[k]] = static_cast<double>(w[k]) * inv_area;
        emit(x, y, bary);
      }
      for (int k = 0; k < 3; ++k) w[k] += step_x[k];
    }
    for (int k = 0; k < 3; ++k) row[k] += step_y[k];
  }
}

struct RasterOptions {
  bool cull_backfaces = true;
  /// Draws triangle edges over the fill.
  bool wireframe = false;
  Color wire_color{0.0, 0.0, 0.0};
  double depth_bias = 1e-3;
};

/// Near-clips, rasterizes and shades every face of the state into `target`.
/// Attributes are interpolated linearly in screen space. Throws
/// DimensionMismatch when the target does not match the viewport.
void rasterize_surface(const Surface& surface, const MeshState& state, const Camera& camera,
                       const ShaderConfig& shader, Framebuffer& target,
                       const RasterOptions& options = {});

}  // namespace npr
