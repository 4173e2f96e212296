#include "npr/raster.hpp"

#include "npr/lines.hpp"

namespace npr {
namespace {

// Vertex in clip coordinates (cx, cy, w) plus view distance and attributes,
// all affine in the world position so clipping may interpolate them linearly.
struct ClipVertex {
  double cx, cy, w, d;
  Vec3 position, normal;
};

ClipVertex lerp(const ClipVertex& a, const ClipVertex& b, double t) {
  return {a.cx + t * (b.cx - a.cx), a.cy + t * (b.cy - a.cy), a.w + t * (b.w - a.w),
          a.d + t * (b.d - a.d), a.position + t * (b.position - a.position),
          a.normal + t * (b.normal - a.normal)};
}

// Sutherland-Hodgman against dist(v) >= 0.
template <class Dist>
std::vector<ClipVertex> clip(const std::vector<ClipVertex>& poly, Dist&& dist) {
  std::vector<ClipVertex> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const ClipVertex& a = poly[i];
    const ClipVertex& b = poly[(i + 1) % n];
    const double da = dist(a), db = dist(b);
    if (da >= 0.0) out.push_back(a);
    if ((da >= 0.0) != (db >= 0.0)) out.push_back(lerp(a, b, da / (da - db)));
  }
  return out;
}

// Guard band in NDC units; keeps snapped coordinates well inside int64 range.
constexpr double kGuard = 8.0;

}  // namespace

void rasterize_surface(const Surface& surface, const MeshState& state, const Camera& camera,
                       const ShaderConfig& shader, Framebuffer& target, const RasterOptions& options) {
  if (target.width() != camera.width || target.height() != camera.height)
    throw Error(ErrorCode::DimensionMismatch, "framebuffer size differs from the camera viewport");
  if (state.positions.size() != surface.vertex_count() ||
      state.normals.size() != surface.vertex_count())
    throw Error(ErrorCode::IndexOutOfRange, "mesh state does not match the surface");
  camera.validate();
  validate(shader);

  const double sx = camera.orthographic() ? camera.ortho_half_height * camera.aspect()
                                          : std::tan(deg_to_rad(camera.fov_deg) * 0.5) * camera.aspect();
  const double sy = camera.orthographic() ? camera.ortho_half_height
                                          : std::tan(deg_to_rad(camera.fov_deg) * 0.5);
  std::vector<ClipVertex> verts(surface.vertex_count());
  for (std::size_t v = 0; v < verts.size(); ++v) {
    const Vec3 p = to_view(camera, state.positions[v]);
    const double w = camera.orthographic() ? 1.0 : p.z();
    verts[v] = {p.x() / sx, p.y() / sy, w, p.z(), state.positions[v], state.normals[v]};
  }

  const int width = target.width(), height = target.height();
  for (FaceId f = 0; f < static_cast<FaceId>(surface.face_count()); ++f) {
    const Triangle tri = surface.face_vertices(f);
    const Vec3 face_normal = normalized_or(
        (state.positions[tri[1]] - state.positions[tri[0]]).cross(state.positions[tri[2]] - state.positions[tri[0]]),
        Vec3::UnitZ());
    std::vector<ClipVertex> poly = {verts[tri[0]], verts[tri[1]], verts[tri[2]]};
    poly = clip(poly, [&](const ClipVertex& v) { return v.d - camera.near; });
    poly = clip(poly, [](const ClipVertex& v) { return kGuard * v.w - v.cx; });
    poly = clip(poly, [](const ClipVertex& v) { return kGuard * v.w + v.cx; });
    poly = clip(poly, [](const ClipVertex& v) { return kGuard * v.w - v.cy; });
    poly = clip(poly, [](const ClipVertex& v) { return kGuard * v.w + v.cy; });
    if (poly.size() < 3) continue;

    std::vector<Vec2> screen(poly.size());
    std::vector<double> depth(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const double nx = poly[i].cx / poly[i].w, ny = poly[i].cy / poly[i].w;
      screen[i] = Vec2((nx + 1.0) * 0.5 * width, (1.0 - ny) * 0.5 * height);
      depth[i] = 0.5 * (view_depth_to_ndc(camera, poly[i].d) + 1.0);
    }
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
      const std::array<std::size_t, 3> k = {0, i, i + 1};
      rasterize_triangle({screen[k[0]], screen[k[1]], screen[k[2]]}, width, height,
                         options.cull_backfaces, [&](int x, int y, const Vec3& b) {
                           const double z = b[0] * depth[k[0]] + b[1] * depth[k[1]] + b[2] * depth[k[2]];
                           if (!(z >= 0.0 && z <= 1.0)) return;
                           const float zf = static_cast<float>(z);
                           if (!(zf < target.depth(x, y))) return;
                           const Vec3 pos = b[0] * poly[k[0]].position + b[1] * poly[k[1]].position +
                                            b[2] * poly[k[2]].position;
                           const Vec3 nrm = normalized_or(b[0] * poly[k[0]].normal + b[1] * poly[k[1]].normal +
                                                              b[2] * poly[k[2]].normal,
                                                          face_normal);
                           const Vec3 view = camera.view_vector(pos).normalized();
                           const Color c = shade(shader, nrm, view);
                           target.color(x, y) = Rgba(static_cast<float>(c.x()), static_cast<float>(c.y()),
                                                     static_cast<float>(c.z()), 1.0f);
                           target.depth(x, y) = zf;
                         });
    }
  }

  if (options.wireframe) {
    std::vector<ScreenSegment> segments;
    for (EdgeId e = 0; e < static_cast<EdgeId>(surface.edge_count()); ++e) {
      const auto [a, b] = surface.edge_vertices(e);
      const ScreenPoint pa = project(camera, state.positions[a]);
      const ScreenPoint pb = project(camera, state.positions[b]);
      if (pa.clipped || pb.clipped) continue;
      segments.emplace_back(pa, pb);
    }
    draw_segments_aliased(target, segments, options.wire_color, 1.0, options.depth_bias);
  }
}

}  // namespace npr
