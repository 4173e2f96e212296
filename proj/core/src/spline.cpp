#include "npr/spline.hpp"

#include <algorithm>

#include "npr/error.hpp"

namespace npr {

std::vector<Vec3> smooth_polyline(std::span<const Vec3> points, bool closed, Smoothing smoothing,
                                  int samples) {
  if (points.size() < 2) throw Error(ErrorCode::TooFewPoints, "a polyline needs two points");
  if (samples < 1) throw Error(ErrorCode::TooFewPoints, "samples per segment must be >= 1");
  if (smoothing == Smoothing::None) return {points.begin(), points.end()};

  const int n = static_cast<int>(points.size());
  auto at = [&](int i) -> const Vec3& {
    if (closed) return points[((i % n) + n) % n];
    return points[std::clamp(i, 0, n - 1)];
  };
  auto eval = [&](int seg, double u) {
    const Vec3 &p0 = at(seg - 1), &p1 = at(seg), &p2 = at(seg + 1), &p3 = at(seg + 2);
    return smoothing == Smoothing::CatmullRom ? catmull_rom(p0, p1, p2, p3, u)
                                              : bspline(p0, p1, p2, p3, u);
  };

  const int segments = closed ? n : n - 1;
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(segments) * samples + 1);
  for (int seg = 0; seg < segments; ++seg) {
    for (int k = 0; k < samples; ++k) out.push_back(eval(seg, static_cast<double>(k) / samples));
  }
  if (!closed) out.push_back(eval(segments - 1, 1.0));
  return out;
}

}  // namespace npr
