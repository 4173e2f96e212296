#pragma once

#include <span>
#include <vector>

#include "npr/math.hpp"

namespace npr {

/// Uniform Catmull-Rom segment between p1 (u=0) and p2 (u=1).
/// Basis: (-u^3+2u^2-u, 3u^3-5u^2+2, -3u^3+4u^2+u, u^3-u^2) / 2.
template <class T>
T catmull_rom(const T& p0, const T& p1, const T& p2, const T& p3, double u) {
  if (u == 0.0) return p1;
  if (u == 1.0) return p2;
  const double u2 = u * u, u3 = u2 * u;
  const double b0 = (-u3 + 2.0 * u2 - u) * 0.5;
  const double b1 = (3.0 * u3 - 5.0 * u2 + 2.0) * 0.5;
  const double b2 = (-3.0 * u3 + 4.0 * u2 + u) * 0.5;
  const double b3 = (u3 - u2) * 0.5;
  return p0 * b0 + p1 * b1 + p2 * b2 + p3 * b3;
}

/// Uniform cubic B-spline segment. At u=0 it evaluates (p0 + 4 p1 + p2) / 6;
/// interior control points are approximated, not interpolated.
template <class T>
T bspline(const T& p0, const T& p1, const T& p2, const T& p3, double u) {
  const double u2 = u * u, u3 = u2 * u;
  const double v = 1.0 - u;
  const double b0 = v * v * v / 6.0;
  const double b1 = (3.0 * u3 - 6.0 * u2 + 4.0) / 6.0;
  const double b2 = (-3.0 * u3 + 3.0 * u2 + 3.0 * u + 1.0) / 6.0;
  const double b3 = u3 / 6.0;
  return p0 * b0 + p1 * b1 + p2 * b2 + p3 * b3;
}

enum class Smoothing { None, CatmullRom, BSpline };

/// Samples a polyline with the given smoothing, `samples` subdivisions per
/// segment. Open curves duplicate their endpoints; closed ones wrap around
/// (the returned points do not repeat the first point at the end).
/// Throws TooFewPoints for fewer than two points or samples < 1.
std::vector<Vec3> smooth_polyline(std::span<const Vec3> points, bool closed, Smoothing smoothing,
                                  int samples);

}  // namespace npr
