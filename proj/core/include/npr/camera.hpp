#pragma once

#include <Eigen/Core>

#include "npr/mesh.hpp"

namespace npr {

enum class Projection { Perspective, Orthographic };

/// Look-at camera with a GL-style projection and a top-left pixel origin.
struct Camera {
  Vec3 eye{0.0, 0.0, 3.0};
  Vec3 target{0.0, 0.0, 0.0};
  Vec3 up{0.0, 1.0, 0.0};
  Projection projection = Projection::Perspective;
  double fov_deg = 45.0;           // vertical, perspective only
  double ortho_half_height = 1.0;  // orthographic only
  double near = 0.1;
  double far = 100.0;
  int width = 512;
  int height = 512;

  /// Throws InvalidConfig.
  void validate() const;

  bool orthographic() const { return projection == Projection::Orthographic; }
  double aspect() const { return static_cast<double>(width) / height; }

  /// Unit vector from the eye towards the target.
  Vec3 forward() const;
  /// Unit camera basis: right, true up, forward.
  void basis(Vec3& right, Vec3& true_up, Vec3& fwd) const;

  /// Vector from p towards the viewer: eye - p for perspective cameras; for
  /// orthographic ones the reversed view direction scaled by the eye-target
  /// distance.
  Vec3 view_vector(const Vec3& p) const;

  /// Camera looking at a bounding sphere from direction `from` (relative to
  /// the center), framing it with a small margin.
  static Camera framing(const BoundingSphere& sphere, int width, int height,
                        const Vec3& from = Vec3(0.0, 0.0, 1.0), double fov_deg = 45.0);
};

struct ScreenPoint {
  double x = 0.0;      // pixels, left to right
  double y = 0.0;      // pixels, top to bottom
  double depth = 0.0;  // normalized, 0 at near, 1 at far
  bool clipped = false;  // in front of the near plane or behind the eye
};

/// Camera-space coordinates: x right, y up, d = distance along forward.
Vec3 to_view(const Camera& camera, const Vec3& p);

/// Normalized depth for a view distance d.
double view_depth_to_ndc(const Camera& camera, double d);

ScreenPoint project(const Camera& camera, const Vec3& p);

}  // namespace npr
