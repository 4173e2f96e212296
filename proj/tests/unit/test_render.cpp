#include <set>

#include "doctest.h"
#include "npr/primitives.hpp"
#include "npr/raster.hpp"
#include "npr/shading.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace npr;
namespace ts = testing_support;
using oracles::coverage_oracle;

namespace {

std::set<std::pair<int, int>> rasterized(const std::array<Vec2, 3>& tri, int w, int h, bool cull) {
  std::set<std::pair<int, int>> out;
  rasterize_triangle(tri, w, h, cull, [&](int x, int y, const Vec3&) {
    CHECK(out.insert({x, y}).second);
  });
  return out;
}

Camera ortho_front(int w, int h) {
  Camera c;
  c.projection = Projection::Orthographic;
  c.eye = Vec3(0, 0, 3);
  c.ortho_half_height = 1.0;
  c.near = 0.5;
  c.far = 10.0;
  c.width = w;
  c.height = h;
  return c;
}

Surface triangle_at(const std::array<Vec3, 3>& p) {
  const std::vector<Triangle> tri{{0, 1, 2}};
  return Surface::build({p[0], p[1], p[2]}, tri);
}

bool is_color(const Rgba& px, const Color& c) {
  return px[0] == static_cast<float>(c.x()) && px[1] == static_cast<float>(c.y()) && px[2] == static_cast<float>(c.z());
}

}  // namespace

TEST_CASE("camera projection examples") {
  Camera c;
  c.eye = Vec3(0, 0, 3);
  c.fov_deg = 90.0;
  c.width = c.height = 100;
  const ScreenPoint center = project(c, Vec3::Zero());
  CHECK(center.x == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(center.y == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(center.depth > 0.0);
  CHECK(center.depth < 1.0);
  CHECK_FALSE(center.clipped);

  const Vec3 inside_near = c.eye + c.forward() * (c.near / 2.0);
  CHECK(project(c, inside_near).clipped);
  CHECK(project(c, c.eye - c.forward()).clipped);

  Camera o = ortho_front(100, 100);
  const ScreenPoint top = project(o, Vec3(0, 1, 0));
  CHECK(top.y == doctest::Approx(0.0));
  CHECK(top.x == doctest::Approx(50.0));

  // Depth is 0 at the near plane and 1 at the far plane for both projections.
  for (Camera cam : {c, o}) {
    CHECK(project(cam, cam.eye + cam.forward() * cam.near).depth == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(project(cam, cam.eye + cam.forward() * cam.far).depth == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("camera validation and framing") {
  Camera c;
  c.near = 0.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = Camera{};
  c.far = 0.05;
  CHECK_THROWS_AS(c.validate(), Error);
  c = Camera{};
  c.up = Vec3(0, 0, 1);
  CHECK_THROWS_AS(c.validate(), Error);

  const BoundingSphere bs{Vec3(1, 2, 3), 2.0};
  const Camera f = Camera::framing(bs, 200, 100);
  f.validate();
  CHECK(f.target == bs.center);
  // Every point of the sphere lies in front of the near plane and inside the view.
  auto g = ts::rng(4);
  for (int i = 0; i < 500; ++i) {
    const Vec3 d = Vec3(ts::uniform(g, -1, 1), ts::uniform(g, -1, 1), ts::uniform(g, -1, 1)).normalized();
    const ScreenPoint p = project(f, bs.center + bs.radius * d);
    CHECK_FALSE(p.clipped);
    CHECK(p.x >= 0.0);
    CHECK(p.x <= 200.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y <= 100.0);
    CHECK(p.depth > 0.0);
    CHECK(p.depth < 1.0);
  }
}

TEST_CASE("triangle coverage equals the per-pixel oracle") {
  auto g = ts::rng(2024);
  int checked = 0;
  for (int i = 0; i < 50; ++i) {
    std::array<Vec2, 3> tri;
    for (auto& v : tri) v = Vec2(ts::uniform(g, -8, 72), ts::uniform(g, -8, 72));
    // Every tenth triangle sits exactly on pixel centers and grid lines to exercise ties.
    if (i % 10 == 0)
      for (auto& v : tri) v = Vec2(std::floor(v.x()) + 0.5, std::floor(v.y()));
    const auto expected = coverage_oracle(tri, 64, 64);
    CHECK(rasterized(tri, 64, 64, false) == expected);
    ++checked;
  }
  CHECK(checked == 50);
}

TEST_CASE("shared edges are covered exactly once") {
  // A fan of triangles around a center tiles the viewport area it covers.
  const Vec2 c(31.5, 32.0);
  std::map<std::pair<int, int>, int> hits;
  const int n = 12;
  for (int k = 0; k < n; ++k) {
    const double a0 = 2 * kPi * k / n, a1 = 2 * kPi * (k + 1) / n;
    const std::array<Vec2, 3> tri{c, c + 20.0 * Vec2(std::cos(a0), std::sin(a0)), c + 20.0 * Vec2(std::cos(a1), std::sin(a1))};
    rasterize_triangle(tri, 64, 64, false, [&](int x, int y, const Vec3&) { hits[{x, y}]++; });
  }
  for (const auto& [p, count] : hits) CHECK(count == 1);
  CHECK(hits.size() > 1000);
}

TEST_CASE("backface culling") {
  // Counterclockwise in world space seen from +z is counterclockwise on screen.
  const Surface front = triangle_at({Vec3(-0.5, -0.5, 0), Vec3(0.5, -0.5, 0), Vec3(0, 0.5, 0)});
  const Surface back = triangle_at({Vec3(-0.5, -0.5, 0), Vec3(0, 0.5, 0), Vec3(0.5, -0.5, 0)});
  const Camera cam = ortho_front(32, 32);
  Framebuffer a(32, 32), b(32, 32);
  rasterize_surface(front, static_state(front), cam, FlatShader{}, a);
  rasterize_surface(back, static_state(back), cam, FlatShader{}, b);
  CHECK_FALSE(a == Framebuffer(32, 32));
  CHECK(b == Framebuffer(32, 32));
  RasterOptions no_cull;
  no_cull.cull_backfaces = false;
  Framebuffer c(32, 32);
  rasterize_surface(back, static_state(back), cam, FlatShader{}, c, no_cull);
  CHECK(c.colors() == a.colors());

  Framebuffer wrong(16, 32);
  CHECK_THROWS_AS(rasterize_surface(front, static_state(front), cam, FlatShader{}, wrong), Error);
}

TEST_CASE("depth ordering on random overlapping pairs") {
  auto g = ts::rng(77);
  Camera cam;
  cam.eye = Vec3(0, 0, 4);
  cam.width = cam.height = 48;
  cam.near = 0.5;
  cam.far = 12.0;
  const Color red(1, 0, 0), blue(0, 0, 1);
  RasterOptions opts;
  opts.cull_backfaces = false;
  int compared = 0;
  for (int pair = 0; pair < 50; ++pair) {
    std::array<std::array<Vec3, 3>, 2> tris;
    for (auto& t : tris) {
      const double z = ts::uniform(g, -2, 1.5);
      for (auto& p : t) p = Vec3(ts::uniform(g, -1.2, 1.2), ts::uniform(g, -1.2, 1.2), z + ts::uniform(g, -0.6, 0.6));
    }
    const Surface A = triangle_at(tris[0]), B = triangle_at(tris[1]);
    Framebuffer only_a(48, 48), only_b(48, 48), both(48, 48);
    rasterize_surface(A, static_state(A), cam, FlatShader{red}, only_a, opts);
    rasterize_surface(B, static_state(B), cam, FlatShader{blue}, only_b, opts);
    const bool a_first = pair % 2 == 0;
    rasterize_surface(a_first ? A : B, static_state(a_first ? A : B), cam, FlatShader{a_first ? red : blue}, both, opts);
    rasterize_surface(a_first ? B : A, static_state(a_first ? B : A), cam, FlatShader{a_first ? blue : red}, both, opts);

    // Oracle depth: normalized depth is affine over the screen for a planar triangle.
    auto depth_at = [&](const std::array<Vec3, 3>& t, double px, double py) {
      std::array<ScreenPoint, 3> s{project(cam, t[0]), project(cam, t[1]), project(cam, t[2])};
      const double det = (s[1].x - s[0].x) * (s[2].y - s[0].y) - (s[2].x - s[0].x) * (s[1].y - s[0].y);
      const double l1 = ((px - s[0].x) * (s[2].y - s[0].y) - (s[2].x - s[0].x) * (py - s[0].y)) / det;
      const double l2 = ((s[1].x - s[0].x) * (py - s[0].y) - (px - s[0].x) * (s[1].y - s[0].y)) / det;
      return s[0].depth + l1 * (s[1].depth - s[0].depth) + l2 * (s[2].depth - s[0].depth);
    };
    for (int y = 0; y < 48; ++y)
      for (int x = 0; x < 48; ++x) {
        const bool in_a = is_color(only_a.color(x, y), red), in_b = is_color(only_b.color(x, y), blue);
        const Rgba& px = both.color(x, y);
        if (in_a && in_b) {
          const double da = depth_at(tris[0], x + 0.5, y + 0.5), db = depth_at(tris[1], x + 0.5, y + 0.5);
          if (std::abs(da - db) < 1e-4) continue;
          CHECK(is_color(px, da < db ? red : blue));
          ++compared;
        } else if (in_a) {
          CHECK(is_color(px, red));
        } else if (in_b) {
          CHECK(is_color(px, blue));
        } else {
          CHECK(is_color(px, Color(1, 1, 1)));
        }
      }
  }
  MESSAGE(compared << " overlapping pixels compared");
  CHECK(compared > 300);
}

TEST_CASE("nearer triangle drawn second wins") {
  const Camera cam = ortho_front(16, 16);
  const Surface far_tri = triangle_at({Vec3(-1, -1, -1), Vec3(1, -1, -1), Vec3(0, 1, -1)});
  const Surface near_tri = triangle_at({Vec3(-1, -1, 1), Vec3(1, -1, 1), Vec3(0, 1, 1)});
  Framebuffer fb(16, 16);
  rasterize_surface(far_tri, static_state(far_tri), cam, FlatShader{Color(1, 0, 0)}, fb);
  rasterize_surface(near_tri, static_state(near_tri), cam, FlatShader{Color(0, 1, 0)}, fb);
  CHECK(is_color(fb.color(8, 8), Color(0, 1, 0)));
  rasterize_surface(far_tri, static_state(far_tri), cam, FlatShader{Color(1, 0, 0)}, fb);
  CHECK(is_color(fb.color(8, 8), Color(0, 1, 0)));
}

TEST_CASE("near-plane clipping keeps the visible part") {
  Camera cam;
  cam.eye = Vec3(0, 0, 2);
  cam.width = cam.height = 32;
  cam.near = 1.0;
  // A long floor strip running from behind the camera to far in front.
  const Surface strip = triangle_at({Vec3(-0.3, -0.5, 5), Vec3(0.3, -0.5, 5), Vec3(0, -0.5, -20)});
  RasterOptions opts;
  opts.cull_backfaces = false;
  Framebuffer fb(32, 32);
  rasterize_surface(strip, static_state(strip), cam, FlatShader{}, fb, opts);
  int written = 0;
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) {
      if (fb.depth(x, y) != std::numeric_limits<float>::infinity()) {
        ++written;
        CHECK(fb.depth(x, y) >= 0.0f);
        CHECK(fb.depth(x, y) <= 1.0f);
      }
    }
  CHECK(written > 0);
}

TEST_CASE("gooch shading") {
  GoochShader cfg;
  cfg.kd = Color(1, 0, 0);
  const Color warm = cfg.k_yellow + cfg.beta * cfg.kd;
  const Color cool = cfg.k_blue + cfg.alpha * cfg.kd;
  CHECK(shade_gooch(cfg, 1.0) == clamp01(warm));
  CHECK(shade_gooch(cfg, -1.0) == clamp01(cool));
  const Color mid = shade_gooch(cfg, 0.0);
  CHECK((mid - Color(0.6, 0.2, 0.2)).norm() <= 1e-9);
  GoochShader defaults;
  CHECK(shade_gooch(defaults, 1.0) == defaults.k_yellow + defaults.beta * defaults.kd);
  CHECK(shade_gooch(defaults, -1.0) == defaults.k_blue + defaults.alpha * defaults.kd);
}

TEST_CASE("toon shading") {
  ToonShader two;
  two.levels = 2;
  two.base = Color(0.2, 0.4, 0.8);
  CHECK(shade_toon(two, 0.49) == Color(0, 0, 0));
  CHECK(shade_toon(two, 0.5) == two.base);
  CHECK(shade_toon(two, 1.0) == two.base);
  ToonShader four;
  four.levels = 4;
  four.base = Color(0.3, 0.6, 0.9);
  CHECK((shade_toon(four, 0.6) - four.base * (2.0 / 3.0)).norm() <= 1e-15);
  for (int levels = 2; levels <= 7; ++levels) {
    ToonShader cfg;
    cfg.levels = levels;
    std::set<double> seen;
    for (int i = 0; i <= 20000; ++i) seen.insert(shade_toon(cfg, -1.0 + 2.0 * i / 20000.0).x());
    CHECK(static_cast<int>(seen.size()) <= levels);
  }
  ToonShader bad;
  bad.levels = 1;
  CHECK_THROWS_AS(validate(ShaderConfig{bad}), Error);
}

TEST_CASE("phong shading") {
  PhongShader cfg;
  const Material& m = cfg.material;
  const Vec3 n = Vec3::UnitZ();
  CHECK(shade_phong(cfg, n, Vec3(0, 1, -0.2).normalized(), n) == clamp01(m.ambient));
  CHECK((shade_phong(cfg, n, n, n) - clamp01(m.ambient + m.diffuse + m.specular)).norm() <= 1e-15);
  PhongShader spec_only;
  spec_only.material.ambient = Color::Zero();
  spec_only.material.diffuse = Color::Zero();
  spec_only.material.specular = Color::Ones();
  spec_only.material.shininess = 32.0;
  const Vec3 v(0, std::sin(deg_to_rad(30)), std::cos(deg_to_rad(30)));
  const double expected = std::pow(std::cos(deg_to_rad(30)), 32.0);
  CHECK(shade_phong(spec_only, n, n, v).x() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.010014).epsilon(1e-4));
}

TEST_CASE("rendering is deterministic") {
  const Surface s = primitives::torus(1.0, 0.4, 48, 24).build();
  Camera cam = Camera::framing(s.bounding_sphere(), 96, 80, Vec3(0.3, 0.8, 1.0));
  Framebuffer a(96, 80), b(96, 80);
  RasterOptions opts;
  opts.wireframe = true;
  rasterize_surface(s, static_state(s), cam, GoochShader{}, a, opts);
  rasterize_surface(s, static_state(s), cam, GoochShader{}, b, opts);
  CHECK(a == b);
  CHECK(a.to_image() == b.to_image());
}

TEST_CASE("framebuffer quantization") {
  CHECK(to_byte(0.0f) == 0);
  CHECK(to_byte(1.0f) == 255);
  CHECK(to_byte(2.0f) == 255);
  CHECK(to_byte(-1.0f) == 0);
  CHECK(to_byte(0.5f) == 128);  // 127.5 rounds half up
  CHECK(to_byte(127.0f / 255.0f) == 127);
  CHECK_THROWS_AS(Framebuffer(0, 4), Error);
  Framebuffer fb(2, 2, Color(0.25, 0.5, 1.0));
  CHECK(fb.depth(1, 1) == std::numeric_limits<float>::infinity());
  const ImageBuffer img = fb.to_image();
  CHECK(img.at(0, 0, 0) == 64);
  CHECK(img.at(0, 0, 1) == 128);
  CHECK(Framebuffer::from_image(img).to_image() == img);
}
