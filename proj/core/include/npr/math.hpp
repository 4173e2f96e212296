#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cmath>

namespace npr {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;

/// RGB in linear float space, channels nominally in [0,1].
using Color = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

inline Color clamp01(const Color& c) { return c.cwiseMax(0.0).cwiseMin(1.0); }

/// Normalizes `v`, returning `fallback` when the length underflows.
inline Vec3 normalized_or(const Vec3& v, const Vec3& fallback, double eps = 1e-300) {
  const double n = v.norm();
  return n > eps ? Vec3(v / n) : fallback;
}

/// Some unit vector orthogonal to `n` (n need not be unit). Deterministic.
inline Vec3 any_perpendicular(const Vec3& n) {
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(n[i]) < std::abs(n[k])) k = i;
  Vec3 axis = Vec3::Zero();
  axis[k] = 1.0;
  return n.cross(axis).normalized();
}

/// Rigid transform: x -> rotation * x + translation.
struct Rigid {
  Quat rotation = Quat::Identity();
  Vec3 translation = Vec3::Zero();

  static Rigid identity() { return {}; }

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 apply_vector(const Vec3& v) const { return rotation * v; }

  /// (this ∘ other)(x) = this(other(x)).
  Rigid operator*(const Rigid& other) const {
    return {(rotation * other.rotation).normalized(), rotation * other.translation + translation};
  }

  Rigid inverse() const {
    const Quat inv = rotation.conjugate();
    return {inv, -(inv * translation)};
  }
};

}  // namespace npr
