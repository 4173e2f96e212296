#include "npr/camera.hpp"

namespace npr {

void Camera::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, "camera: " + what); };
  if (width <= 0 || height <= 0) bad("viewport must be positive");
  if (!(near > 0.0) || !(near < far)) bad("need 0 < near < far");
  const Vec3 f = target - eye;
  if (!(f.norm() > 0.0)) bad("eye and target coincide");
  if (!(f.normalized().cross(up).norm() > 1e-9)) bad("up is parallel to the view direction");
  if (!orthographic() && !(fov_deg > 0.0 && fov_deg < 180.0)) bad("fov must be in (0, 180)");
  if (orthographic() && !(ortho_half_height > 0.0)) bad("ortho half-height must be positive");
}

Vec3 Camera::forward() const { return (target - eye).normalized(); }

void Camera::basis(Vec3& right, Vec3& true_up, Vec3& fwd) const {
  fwd = forward();
  right = fwd.cross(up).normalized();
  true_up = right.cross(fwd);
}

Vec3 Camera::view_vector(const Vec3& p) const {
  if (orthographic()) return -forward() * (target - eye).norm();
  return eye - p;
}

Camera Camera::framing(const BoundingSphere& sphere, int w, int h, const Vec3& from, double fov) {
  Camera c;
  c.width = w;
  c.height = h;
  c.fov_deg = fov;
  const double r = sphere.radius > 0.0 ? sphere.radius : 1.0;
  const double half = deg_to_rad(fov) * 0.5;
  const double fit = std::min(std::tan(half), std::tan(half) * c.aspect());
  const double dist = 1.1 * r * std::sqrt(1.0 + 1.0 / (fit * fit));
  const Vec3 dir = from.normalized();
  c.target = sphere.center;
  c.eye = sphere.center + dir * dist;
  c.up = std::abs(dir.dot(Vec3::UnitY())) > 0.999 ? Vec3(0.0, 0.0, -1.0) : Vec3::UnitY();
  c.near = std::max(dist - 1.5 * r, 1e-3 * dist);
  c.far = dist + 1.5 * r;
  c.ortho_half_height = 1.1 * r;
  return c;
}

Vec3 to_view(const Camera& camera, const Vec3& p) {
  Vec3 right, up, fwd;
  camera.basis(right, up, fwd);
  const Vec3 d = p - camera.eye;
  return {d.dot(right), d.dot(up), d.dot(fwd)};
}

double view_depth_to_ndc(const Camera& camera, double d) {
  const double n = camera.near, f = camera.far;
  if (camera.orthographic()) return 2.0 * (d - n) / (f - n) - 1.0;
  return (f + n) / (f - n) - 2.0 * f * n / ((f - n) * d);
}

ScreenPoint project(const Camera& camera, const Vec3& p) {
  const Vec3 v = to_view(camera, p);
  ScreenPoint s;
  double nx, ny;
  if (camera.orthographic()) {
    nx = v.x() / (camera.ortho_half_height * camera.aspect());
    ny = v.y() / camera.ortho_half_height;
  } else {
    const double t = std::tan(deg_to_rad(camera.fov_deg) * 0.5);
    const double d = v.z() > 0.0 ? v.z() : 1e-300;
    nx = v.x() / (d * t * camera.aspect());
    ny = v.y() / (d * t);
  }
  s.clipped = v.z() < camera.near;
  s.x = (nx + 1.0) * 0.5 * camera.width;
  s.y = (1.0 - ny) * 0.5 * camera.height;
  s.depth = 0.5 * (view_depth_to_ndc(camera, std::max(v.z(), 1e-300)) + 1.0);
  return s;
}

}  // namespace npr
