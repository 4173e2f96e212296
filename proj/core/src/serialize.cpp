#include "npr/serialize.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "npr/framebuffer.hpp"
#include "npr/lines.hpp"
#include "npr/raster.hpp"

namespace npr {
namespace {

using nlohmann::json;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

// Golden-ratio hue walk so neighboring patch ids get distinct tints.
Color patch_tint(std::size_t i) {
  const double h = std::fmod(0.618033988749895 * static_cast<double>(i), 1.0) * 6.0;
  const int sector = static_cast<int>(h);
  const double f = h - sector;
  const double lo = 0.45, hi = 0.95;
  const double up = lo + (hi - lo) * f, down = hi - (hi - lo) * f;
  switch (sector) {
    case 0: return {hi, up, lo};
    case 1: return {down, hi, lo};
    case 2: return {lo, hi, up};
    case 3: return {lo, down, hi};
    case 4: return {up, lo, hi};
    default: return {hi, lo, down};
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

void write_curvature_csv(const CurvatureField& field, std::ostream& out) {
  std::string s = "id,k1,k2,e1x,e1y,e1z,e2x,e2y,e2z,a,b,c,d\n";
  for (std::size_t v = 0; v < field.size(); ++v) {
    s += std::to_string(v);
    auto col = [&](double x) {
      s += ',';
      s += format_double(x);
    };
    col(field.k1[v]);
    col(field.k2[v]);
    for (int i = 0; i < 3; ++i) col(field.e1[v][i]);
    for (int i = 0; i < 3; ++i) col(field.e2[v][i]);
    for (int i = 0; i < 4; ++i) col(field.has_derivative ? field.dcurv[v][i] : 0.0);
    s += '\n';
  }
  out << s;
}

void write_contours_json(const std::vector<const ContourSet*>& sets, std::ostream& out) {
  json doc;
  doc["contours"] = json::array();
  for (const ContourSet* set : sets) {
    json js;
    js["name"] = set->name;
    js["crossing_edges"] = set->crossing_edges;
    js["polylines"] = json::array();
    for (const Polyline& line : set->polylines) {
      json jl;
      jl["closed"] = line.closed;
      jl["points"] = json::array();
      for (const ContourPoint& p : line.points) {
        jl["points"].push_back({{"p", vec_json(p.position)},
                                {"n", vec_json(p.normal)},
                                {"ndotv", number_or_null(p.ndotv)},
                                {"strength", number_or_null(p.strength)},
                                {"edge", p.edge},
                                {"t", p.t}});
      }
      js["polylines"].push_back(std::move(jl));
    }
    doc["contours"].push_back(std::move(js));
  }
  out << doc.dump(1) << '\n';
}

void write_patches_json(const std::vector<Patch>& patches, std::ostream& out) {
  json doc;
  doc["patches"] = json::array();
  for (const Patch& p : patches) {
    json jp;
    jp["seed"] = p.seed;
    jp["faces"] = p.faces;
    jp["uvs"] = json::array();
    for (const auto& tri : p.uvs) {
      json t = json::array();
      for (const Vec2& uv : tri) t.push_back({uv.x(), uv.y()});
      jp["uvs"].push_back(std::move(t));
    }
    doc["patches"].push_back(std::move(jp));
  }
  out << doc.dump(1) << '\n';
}

ImageBuffer render_uv_atlas(const std::vector<Patch>& patches, int size) {
  if (size <= 0) throw Error(ErrorCode::InvalidConfig, "atlas size must be positive");
  Framebuffer fb(size, size, Color(1.0, 1.0, 1.0));
  if (patches.empty()) return fb.to_image();
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(patches.size()))));
  const double cell = static_cast<double>(size) / cols;
  std::vector<ScreenSegment> outline;
  for (std::size_t i = 0; i < patches.size(); ++i) {
    const Patch& p = patches[i];
    Vec2 lo = Vec2::Constant(std::numeric_limits<double>::infinity()), hi = -lo;
    for (const auto& tri : p.uvs)
      for (const Vec2& uv : tri) {
        lo = lo.cwiseMin(uv);
        hi = hi.cwiseMax(uv);
      }
    const double extent = std::max((hi - lo).maxCoeff(), 1e-12);
    const double margin = 0.05 * cell;
    const double scale = (cell - 2.0 * margin) / extent;
    const Vec2 origin((i % cols) * cell + margin, (i / cols) * cell + margin);
    auto to_px = [&](const Vec2& uv) {
      // v grows upwards in the atlas.
      return Vec2(origin.x() + (uv.x() - lo.x()) * scale, origin.y() + (hi.y() - uv.y()) * scale);
    };
    const Color tint = patch_tint(i);
    const Rgba fill(static_cast<float>(tint.x()), static_cast<float>(tint.y()), static_cast<float>(tint.z()), 1.0f);
    for (const auto& tri : p.uvs) {
      const std::array<Vec2, 3> s = {to_px(tri[0]), to_px(tri[1]), to_px(tri[2])};
      rasterize_triangle(s, size, size, false, [&](int x, int y, const Vec3&) { fb.color(x, y) = fill; });
      for (int k = 0; k < 3; ++k) {
        ScreenPoint a, b;
        a.x = s[k].x();
        a.y = s[k].y();
        b.x = s[(k + 1) % 3].x();
        b.y = s[(k + 1) % 3].y();
        outline.emplace_back(a, b);
      }
    }
  }
  draw_segments_aliased(fb, outline, Color(0.1, 0.1, 0.1), 1.0, 0.0);
  return fb.to_image();
}

}  // namespace npr
