// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero only when
// a criterion outside the documented known-failure list fails.
#include <Eigen/SVD>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "npr/contours.hpp"
#include "npr/curvature.hpp"
#include "npr/io.hpp"
#include "npr/lapped.hpp"
#include "npr/primitives.hpp"
#include "npr/raster.hpp"
#include "npr/shading.hpp"
#include "npr/spline.hpp"
#include "oracles.hpp"

using namespace npr;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  bool known_failure = false;  // documented as unattainable
  bool gating = true;
};

class Report {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      out_.pass = false;
      if (!failures_.empty()) failures_ += "; ";
      failures_ += what;
    }
  }
  void note(const std::string& s) {
    if (!notes_.empty()) notes_ += "; ";
    notes_ += s;
  }
  Outcome finish() {
    out_.detail = out_.pass ? notes_ : failures_ + (notes_.empty() ? "" : " [" + notes_ + "]");
    return out_;
  }
  Outcome& outcome() { return out_; }

 private:
  Outcome out_;
  std::string failures_, notes_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }
double uniform(std::mt19937_64& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }

CurvatureField full_curvature(const Surface& s, const MeshState& st) {
  CurvatureField f = estimate_curvature(s, st);
  estimate_curvature_derivative(s, st, f);
  return f;
}

double mean_sphere_error(int level) {
  const Surface s = primitives::icosphere(level).build();
  const CurvatureField f = estimate_curvature(s, static_state(s));
  double sum = 0.0;
  for (std::size_t v = 0; v < f.size(); ++v) sum += std::abs(f.k1[v] - 1.0) + std::abs(f.k2[v] - 1.0);
  return sum / (2.0 * f.size());
}

Outcome curvature_accuracy() {
  Report r;
  const auto t0 = Clock::now();
  const Surface ico = primitives::icosphere(4).build();
  const CurvatureField f = full_curvature(ico, static_state(ico));
  const double elapsed = seconds_since(t0);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t v = 0; v < f.size(); ++v) {
    e1 += std::abs(f.k1[v] - 1.0);
    e2 += std::abs(f.k2[v] - 1.0);
  }
  e1 /= f.size();
  e2 /= f.size();
  r.expect(e1 < 0.05 && e2 < 0.05, "icosphere(4) mean error too large");
  r.note("icosphere(4) mean|k1-1|=" + fmt("%.2e", e1) + " mean|k2-1|=" + fmt("%.2e", e2));
  r.expect(elapsed < 5.0, "runtime over 5 s");
  r.note("runtime " + fmt("%.3f", elapsed) + " s");

  const Surface grid = primitives::grid(20, 20, 0.1).build();
  const CurvatureField g = estimate_curvature(grid, static_state(grid));
  double flat = 0.0;
  for (std::size_t v = 0; v < g.size(); ++v) flat = std::max({flat, std::abs(g.k1[v]), std::abs(g.k2[v])});
  r.expect(flat < 1e-9, "flat grid curvature not zero");
  r.note("grid max|k|=" + fmt("%.1e", flat));

  const Surface cyl = primitives::cylinder(0.5, 2.0, 96, 48).build();
  const CurvatureField c = estimate_curvature(cyl, static_state(cyl));
  double worst = 0.0;
  for (int v : oracles::deep_interior(cyl)) worst = std::max(worst, std::abs(c.k1[v] - 2.0) / 2.0);
  r.expect(worst <= 0.02, "cylinder k1 off by more than 2%");
  r.note("cylinder max rel|k1-2|=" + fmt("%.4f", worst));

  // Non-increasing with a 1e-12 round-off floor (errors are at round-off level).
  const double m2 = mean_sphere_error(2), m3 = mean_sphere_error(3), m4 = mean_sphere_error(4);
  r.expect(m3 <= m2 + 1e-12 && m4 <= m3 + 1e-12, "sphere error increases with subdivision");
  r.note("sphere levels 2/3/4: " + fmt("%.1e", m2) + " " + fmt("%.1e", m3) + " " + fmt("%.1e", m4));

  // Strict convergence on a non-umbilic surface with analytic curvatures.
  const double a = 1.0, b = 0.8, cc = 0.5;
  std::vector<double> errs;
  for (int level = 2; level <= 4; ++level) {
    auto data = primitives::icosphere(level);
    for (Vec3& p : data.positions) p = Vec3(a * p.x(), b * p.y(), cc * p.z());
    const Surface s = data.build();
    const CurvatureField e = estimate_curvature(s, static_state(s));
    double sum = 0.0;
    for (std::size_t v = 0; v < e.size(); ++v) {
      const Vec3& p = s.position(static_cast<int>(v));
      const double q = p.x() * p.x() / std::pow(a, 4) + p.y() * p.y() / std::pow(b, 4) + p.z() * p.z() / std::pow(cc, 4);
      const double K = 1.0 / (a * a * b * b * cc * cc * q * q);
      const double H = std::abs(p.squaredNorm() - a * a - b * b - cc * cc) / (2.0 * a * a * b * b * cc * cc * std::pow(q, 1.5));
      const double disc = std::sqrt(std::max(0.0, H * H - K));
      sum += std::abs(e.k1[v] - (H + disc)) + std::abs(e.k2[v] - (H - disc));
    }
    errs.push_back(sum / (2.0 * e.size()));
  }
  r.expect(errs[1] < errs[0] && errs[2] < errs[1], "ellipsoid error not strictly decreasing");
  r.note("ellipsoid levels 2/3/4: " + fmt("%.4f", errs[0]) + " " + fmt("%.4f", errs[1]) + " " + fmt("%.4f", errs[2]));
  return r.finish();
}

Outcome contour_correctness() {
  Report r;
  auto g = rng(2024);
  const Surface sphere = primitives::icosphere(3).build();
  const Surface torus = primitives::torus(1.0, 0.4, 48, 24).build();
  int fields = 0, mismatches = 0, bad_points = 0, open_lines = 0;
  for (const Surface* s : {&sphere, &torus}) {
    const MeshState st = static_state(*s);
    for (int trial = 0; trial < 60; ++trial, ++fields) {
      std::vector<double> f(s->vertex_count());
      const Vec3 dir(uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1));
      const double offset = uniform(g, -0.5, 0.5), freq = uniform(g, 0.5, 6.0);
      for (std::size_t v = 0; v < f.size(); ++v) {
        const Vec3& p = s->position(static_cast<int>(v));
        f[v] = trial % 2 == 0 ? dir.dot(p) + offset + 0.3 * std::sin(freq * p.x() * p.y()) : uniform(g, -1, 1);
      }
      const ContourSet set = extract_isocurves(*s, st, f);
      if (set.crossing_edges != oracles::brute_crossings(*s, f)) ++mismatches;
      for (const auto& line : set.polylines) {
        if (!line.closed) ++open_lines;
        for (const auto& p : line.points) {
          const auto [a, b] = s->edge_vertices(p.edge);
          const double recon = f[a] + p.t * (f[b] - f[a]);
          if (std::abs(recon) > 1e-12 * std::max(std::abs(f[a]), std::abs(f[b]))) ++bad_points;
        }
      }
    }
  }
  r.expect(fields >= 100, "fewer than 100 fields");
  r.expect(mismatches == 0, std::to_string(mismatches) + " crossing sets differ from the brute-force scan");
  r.expect(bad_points == 0, std::to_string(bad_points) + " points do not reconstruct f=0");
  r.expect(open_lines == 0, std::to_string(open_lines) + " open polylines on closed meshes");
  r.note(std::to_string(fields) + " fields, crossing sets exact, reconstruction within 1e-12, all polylines closed");
  return r.finish();
}

Camera ortho_from(const Vec3& from) {
  Camera c;
  c.projection = Projection::Orthographic;
  c.eye = from;
  c.target = Vec3::Zero();
  c.up = std::abs(from.normalized().y()) > 0.9 ? Vec3::UnitZ() : Vec3::UnitY();
  c.ortho_half_height = 1.5;
  c.near = 0.1;
  c.far = 20.0;
  return c;
}

Outcome silhouette_geometry() {
  Report r;
  const Surface ico = primitives::icosphere(4).build();
  for (const Vec3& from : {Vec3(0, 0, 5), Vec3(1, 2, 3), Vec3(-4, 0.5, 0.2)}) {
    const Camera cam = ortho_from(from);
    const ContourSet set = extract_silhouettes(ico, static_state(ico), cam);
    bool ok = set.polylines.size() == 1 && set.polylines[0].closed;
    double worst = 0.0;
    for (const auto& l : set.polylines)
      for (const auto& p : l.points) worst = std::max(worst, std::abs(p.normal.dot(-cam.forward())));
    ok = ok && worst < 0.05;
    r.expect(ok, "icosphere silhouette is not a single closed loop with |n.v| < 0.05");
    if (from == Vec3(0, 0, 5)) r.note("icosphere silhouette: 1 closed loop, max|n.v|=" + fmt("%.1e", worst));
  }

  const Surface sphere = primitives::icosphere(3).build();
  const CurvatureField sf = full_curvature(sphere, static_state(sphere));
  bool convex = true;
  for (std::size_t v = 0; v < sf.size(); ++v) convex = convex && sf.k1[v] > 0.0 && sf.k2[v] > 0.0;
  r.expect(convex, "icosphere not convex");
  Camera persp;
  persp.eye = Vec3(0.5, 2, 3);
  const bool empty = extract_suggestive(sphere, static_state(sphere), sf, persp).polylines.empty() &&
                     extract_suggestive(sphere, static_state(sphere), sf, ortho_from(Vec3(1, 1, 4))).polylines.empty();
  r.expect(empty, "suggestive contours found on the sphere");
  if (convex && empty) r.note("icosphere convex (k1,k2 > 0), suggestive set empty");

  // Torus fixture viewed along its axis: check for a k_r sign change first.
  const Surface torus = primitives::torus(1.0, 0.4, 64, 32).build();
  const CurvatureField tf = full_curvature(torus, static_state(torus));
  Camera axis;
  axis.eye = Vec3(0, 0, 5);
  const ScalarField kr = radial_curvature_field(torus, static_state(torus), tf, axis);
  int sign_changes = 0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(torus.edge_count()); ++e) {
    const auto [a, b] = torus.edge_vertices(e);
    if ((kr[a] >= 0.0) != (kr[b] >= 0.0)) ++sign_changes;
  }
  const auto [kmin, kmax] = std::minmax_element(kr.begin(), kr.end());
  const std::size_t found = extract_suggestive(torus, static_state(torus), tf, axis).polylines.size();
  if (sign_changes == 0) {
    r.expect(false, "torus axis-on: k_r has no sign change (k_r in [" + fmt("%.3f", *kmin) + ", " +
                        fmt("%.3f", *kmax) + "], 1/r = 2.5): the view vector lies in each meridian plane, so k_r "
                        "is the tube curvature everywhere and the zero set is empty by geometry");
    r.outcome().known_failure = true;
  } else {
    r.expect(found > 0, "torus axis-on: sign change present but no suggestive contours extracted");
  }
  r.note("torus axis-on: " + std::to_string(sign_changes) + " sign-change edges, " + std::to_string(found) +
         " polylines");
  Outcome o = r.finish();
  // Only a failure caused solely by the torus item is the documented one.
  if (!o.pass && o.known_failure && o.detail.rfind("torus axis-on", 0) != 0) o.known_failure = false;
  return o;
}

VertexAnimatedSurface line_frames(const std::vector<double>& xs, Interpolation mode) {
  VertexAnimatedSurface s;
  const std::vector<Triangle> tri{{0, 1, 2}};
  s.surface = Surface::build({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, tri);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Keyframe k;
    k.name = "f" + std::to_string(i);
    k.positions = {{xs[i], 0.3 * xs[i] * xs[i], 0}, {1 + xs[i], 0, 0.1 * xs[i]}, {xs[i], 1, 0}};
    k.normals.assign(3, Vec3::UnitZ());
    s.keyframes.push_back(k);
  }
  s.animations["all"] = {0, static_cast<int>(xs.size())};
  s.interpolation = mode;
  return s;
}

Quat axis_angle(double deg, const Vec3& axis) { return Quat(Eigen::AngleAxisd(deg_to_rad(deg), axis.normalized())); }

Outcome animation_identities() {
  Report r;
  const auto lin = line_frames({0.0, 2.0, 3.7, -1.25}, Interpolation::Linear);
  bool bitwise = true;
  for (int k = 0; k < 4; ++k) {
    const auto& got = interpolate_keyframes(lin, "all", k).positions;
    const auto& want = lin.keyframes[k].positions;
    bitwise = bitwise && std::memcmp(got.data(), want.data(), want.size() * sizeof(Vec3)) == 0;
  }
  r.expect(bitwise, "linear keyframe endpoints not bitwise equal");

  const auto cr = line_frames({0.0, 1.0, 3.0, 4.0, 2.5}, Interpolation::CatmullRom);
  double cr_err = 0.0;
  for (int k = 0; k < 5; ++k) {
    const auto& got = interpolate_keyframes(cr, "all", k).positions;
    for (int v = 0; v < 3; ++v) cr_err = std::max(cr_err, (got[v] - cr.keyframes[k].positions[v]).norm());
  }
  r.expect(cr_err <= 1e-6, "catmull-rom keyframe endpoints off by more than 1e-6");

  // Two-bone bar along x; vertices past x=1 follow the second bone.
  SkinnedSurface s;
  const auto data = primitives::cylinder(0.2, 2.0, 8, 6);
  std::vector<Vec3> p = data.positions;
  for (Vec3& v : p) v = Vec3(v.z() + 1.0, v.x(), v.y());
  s.surface = Surface::build(p, data.triangles);
  s.skeleton.bones = {{"root", kInvalid, {axis_angle(10, Vec3::UnitZ()), Vec3(0, 0, 0)}},
                      {"tip", 0, {axis_angle(-5, Vec3(0, 1, 1)), Vec3(1, 0, 0)}}};
  for (const Vec3& v : p) {
    const double w = std::clamp(v.x() - 0.5, 0.0, 1.0);
    s.weights.push_back({{0, 1.0 - w}, {1, w}});
  }
  const MeshState bind = skin_vertices(s, s.skeleton.bind_globals());
  double bind_err = 0.0;
  for (std::size_t v = 0; v < p.size(); ++v) bind_err = std::max(bind_err, (bind.positions[v] - p[v]).norm());
  r.expect(bind_err <= 1e-6, "bind pose moves vertices");

  SkeletalAnimation anim;
  anim.tracks = {{1, {{0.0, axis_angle(40, Vec3(0, 0, 1)), Vec3(1, 0, 0)}}}};
  const auto pose = pose_skeleton(s.skeleton, anim, 0.0);
  const MeshState base = skin_vertices(s, pose);
  const Rigid motion{axis_angle(73, Vec3(1, -2, 0.5)), Vec3(3, -1, 7)};
  auto moved_pose = pose;
  for (auto& g : moved_pose) g = motion * g;
  const MeshState moved = skin_vertices(s, moved_pose);
  double scale = 0.0, rel = 0.0;
  for (const Vec3& q : base.positions) scale = std::max(scale, motion.apply(q).norm());
  for (std::size_t v = 0; v < base.positions.size(); ++v)
    rel = std::max(rel, (moved.positions[v] - motion.apply(base.positions[v])).norm() / scale);
  r.expect(rel <= 1e-5, "skinning does not commute with a rigid motion");
  r.note("linear endpoints bitwise; catmull-rom max err " + fmt("%.1e", cr_err) + "; bind max err " +
         fmt("%.1e", bind_err) + "; commutation rel err " + fmt("%.1e", rel));
  return r.finish();
}

Outcome md2_loader() {
  Report r;
  const VertexAnimatedSurface m = load_md2(oracles::hand_md2({oracles::kFrameA, oracles::kFrameB}));
  // scale * byte + translate, by hand.
  const std::vector<Vec3> expected{Vec3(6.0, -2.0, 0.5), Vec3(1.0, 0.5, 0.5), Vec3(2.5, -1.0, 10.5)};
  r.expect(m.keyframes.size() == 2 && m.keyframes[1].positions == expected &&
               m.keyframes[0].positions == std::vector<Vec3>{Vec3(10, 0, 0), Vec3(0, 10, 0), Vec3(0, 0, 10)},
           "decompressed positions differ from the hand-computed values");
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return std::optional<ErrorCode>(e.code());
    }
    return std::optional<ErrorCode>();
  };
  r.expect(code_of([] { load_md2(oracles::hand_md2({oracles::kFrameA}, 0x58585858)); }) == ErrorCode::BadMagic,
           "bad magic accepted");
  r.expect(code_of([] { load_md2(oracles::hand_md2({oracles::kFrameA}, 0x32504449, 7)); }) ==
               ErrorCode::UnsupportedVersion,
           "version 7 accepted");
  r.note("positions exact; BadMagic and UnsupportedVersion raised");
  return r.finish();
}

Outcome rasterizer() {
  Report r;
  auto g = rng(99);
  int coverage_bad = 0;
  for (int i = 0; i < 50; ++i) {
    std::array<Vec2, 3> tri;
    for (auto& v : tri) v = Vec2(uniform(g, -8, 72), uniform(g, -8, 72));
    if (i % 10 == 0)
      for (auto& v : tri) v = Vec2(std::floor(v.x()) + 0.5, std::floor(v.y()));
    std::set<std::pair<int, int>> got;
    rasterize_triangle(tri, 64, 64, false, [&](int x, int y, const Vec3&) { got.insert({x, y}); });
    if (got != oracles::coverage_oracle(tri, 64, 64)) ++coverage_bad;
  }
  r.expect(coverage_bad == 0, std::to_string(coverage_bad) + " triangles differ from the coverage oracle");

  Camera cam;
  cam.eye = Vec3(0, 0, 4);
  cam.width = cam.height = 48;
  cam.near = 0.5;
  cam.far = 12.0;
  RasterOptions opts;
  opts.cull_backfaces = false;
  const Color red(1, 0, 0), blue(0, 0, 1);
  auto is = [](const Rgba& px, const Color& c) { return px.head<3>() == c.cast<float>(); };
  int depth_bad = 0, compared = 0;
  for (int pair = 0; pair < 50; ++pair) {
    std::array<std::array<Vec3, 3>, 2> tris;
    for (auto& t : tris) {
      const double z = uniform(g, -2, 1.5);
      for (auto& q : t) q = Vec3(uniform(g, -1.2, 1.2), uniform(g, -1.2, 1.2), z + uniform(g, -0.6, 0.6));
    }
    const std::vector<Triangle> one{{0, 1, 2}};
    const Surface A = Surface::build({tris[0][0], tris[0][1], tris[0][2]}, one);
    const Surface B = Surface::build({tris[1][0], tris[1][1], tris[1][2]}, one);
    Framebuffer fa(48, 48), fb(48, 48), both(48, 48);
    rasterize_surface(A, static_state(A), cam, FlatShader{red}, fa, opts);
    rasterize_surface(B, static_state(B), cam, FlatShader{blue}, fb, opts);
    rasterize_surface(B, static_state(B), cam, FlatShader{blue}, both, opts);
    rasterize_surface(A, static_state(A), cam, FlatShader{red}, both, opts);
    auto depth_at = [&](const std::array<Vec3, 3>& t, double px, double py) {
      std::array<ScreenPoint, 3> s{project(cam, t[0]), project(cam, t[1]), project(cam, t[2])};
      const double det = (s[1].x - s[0].x) * (s[2].y - s[0].y) - (s[2].x - s[0].x) * (s[1].y - s[0].y);
      const double l1 = ((px - s[0].x) * (s[2].y - s[0].y) - (s[2].x - s[0].x) * (py - s[0].y)) / det;
      const double l2 = ((s[1].x - s[0].x) * (py - s[0].y) - (px - s[0].x) * (s[1].y - s[0].y)) / det;
      return s[0].depth + l1 * (s[1].depth - s[0].depth) + l2 * (s[2].depth - s[0].depth);
    };
    for (int y = 0; y < 48; ++y)
      for (int x = 0; x < 48; ++x) {
        const bool in_a = is(fa.color(x, y), red), in_b = is(fb.color(x, y), blue);
        if (!(in_a && in_b)) continue;
        const double da = depth_at(tris[0], x + 0.5, y + 0.5), db = depth_at(tris[1], x + 0.5, y + 0.5);
        if (std::abs(da - db) < 1e-4) continue;
        ++compared;
        if (!is(both.color(x, y), da < db ? red : blue)) ++depth_bad;
      }
  }
  r.expect(depth_bad == 0, std::to_string(depth_bad) + " overlapping pixels have the wrong winner");

  bool toon_ok = true;
  for (int levels = 2; levels <= 8; ++levels) {
    ToonShader t;
    t.levels = levels;
    std::set<double> seen;
    for (int i = 0; i <= 20000; ++i) seen.insert(shade_toon(t, -1.0 + 2.0 * i / 20000.0).x());
    toon_ok = toon_ok && static_cast<int>(seen.size()) <= levels;
  }
  r.expect(toon_ok, "toon sweep has more intensities than levels");

  GoochShader d;
  r.expect(shade_gooch(d, 1.0) == d.k_yellow + d.beta * d.kd && shade_gooch(d, -1.0) == d.k_blue + d.alpha * d.kd,
           "gooch endpoints not exact");
  GoochShader red_kd;
  red_kd.kd = Color(1, 0, 0);
  const double gooch_err = (shade_gooch(red_kd, 0.0) - Color(0.6, 0.2, 0.2)).norm();
  r.expect(gooch_err <= 1e-9, "gooch example off");
  r.note("50/50 coverage exact; " + std::to_string(compared) + " overlap pixels ordered correctly; toon <= levels; "
         "gooch endpoints exact; gooch example err " + fmt("%.1e", gooch_err));
  return r.finish();
}

Outcome splines() {
  Report r;
  auto g = rng(5);
  double interp = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 7, samples = 1 + trial % 5;
    std::vector<Vec3> pts(n);
    for (auto& q : pts) q = Vec3(uniform(g, -5, 5), uniform(g, -5, 5), uniform(g, -5, 5));
    for (bool closed : {false, true}) {
      const auto out = smooth_polyline(pts, closed, Smoothing::CatmullRom, samples);
      for (int i = 0; i < n; ++i) {
        const std::size_t k = (!closed && i == n - 1) ? out.size() - 1 : static_cast<std::size_t>(i) * samples;
        interp = std::max(interp, (out[k] - pts[i]).norm());
      }
    }
  }
  r.expect(interp <= 1e-9, "catmull-rom misses a control point");
  const double knot = bspline(0.0, 1.0, 0.0, 0.0, 0.0);
  r.expect(std::abs(knot - 2.0 / 3.0) <= 1e-12, "b-spline knot value is not 2/3");
  const Vec3 a(1, -2, 0.5), dir = Vec3(0.3, 0.8, -0.2).normalized();
  std::vector<Vec3> line;
  for (int i = 0; i < 9; ++i) line.push_back(a + uniform(g, -4, 4) * dir);
  double off = 0.0;
  for (Smoothing s : {Smoothing::CatmullRom, Smoothing::BSpline})
    for (bool closed : {false, true})
      for (const Vec3& q : smooth_polyline(line, closed, s, 6))
        off = std::max(off, ((q - a) - (q - a).dot(dir) * dir).norm());
  r.expect(off <= 1e-9, "collinear input gives non-collinear samples");
  r.note("catmull-rom max err " + fmt("%.1e", interp) + "; knot " + fmt("%.17g", knot) + "; collinear dev " +
         fmt("%.1e", off));
  return r.finish();
}

Outcome lapped() {
  Report r;
  for (const Surface& s : {primitives::icosphere(3).build(), primitives::torus(1.0, 0.4, 48, 24).build()}) {
    const CurvatureField c = estimate_curvature(s, static_state(s));
    const TangentField t = build_tangent_field(s, c, 3);
    const auto patches = cover_surface(s, t, 0.35);
    std::vector<int> covered(s.face_count(), 0);
    for (const Patch& p : patches)
      for (FaceId f : p.faces) covered[f]++;
    r.expect(std::all_of(covered.begin(), covered.end(), [](int n) { return n > 0; }), "uncovered faces");
    const auto again = cover_surface(s, t, 0.35);
    bool same = again.size() == patches.size();
    for (std::size_t i = 0; same && i < patches.size(); ++i)
      same = again[i].faces == patches[i].faces && again[i].uvs == patches[i].uvs;
    r.expect(same, "repeat runs differ");
  }

  auto data = primitives::grid(8, 6, 0.3);
  auto g = rng(21);
  const Quat tilt(Eigen::AngleAxisd(0.6, Vec3(1, 2, 0.5).normalized()));
  for (Vec3& p : data.positions) {
    p.x() += uniform(g, -0.05, 0.05);
    p.y() += uniform(g, -0.05, 0.05);
    p = tilt * p;
  }
  const Surface plane = data.build();
  TangentField field;
  field.vectors.assign(plane.face_count(), tilt * Vec3(1, 0.3, 0).normalized());
  std::vector<FaceId> faces(plane.face_count());
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) faces[f] = f;
  const Patch p = parameterize_patch(plane, faces, field);
  double dev = 0.0;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Triangle t = plane.face_vertices(faces[i]);
    const Vec3 e1 = plane.position(t[1]) - plane.position(t[0]), e2 = plane.position(t[2]) - plane.position(t[0]);
    const Vec3 x = e1.normalized(), y = plane.face_normal(faces[i]).cross(x);
    Eigen::Matrix2d E, Q;
    E << e1.dot(x), e2.dot(x), e1.dot(y), e2.dot(y);
    const auto& uv = p.uvs[i];
    Q << uv[1].x() - uv[0].x(), uv[2].x() - uv[0].x(), uv[1].y() - uv[0].y(), uv[2].y() - uv[0].y();
    const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::Matrix2d>(Q * E.inverse()).singularValues();
    dev = std::max({dev, std::abs(sv[0] - 1.0), std::abs(sv[1] - 1.0)});
  }
  r.expect(dev <= 1e-6, "planar patch is not isometric");
  r.note("icosphere and torus fully covered; repeat runs identical; planar singular values within " +
         fmt("%.1e", dev) + " of 1");
  return r.finish();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nprkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return nprcli::run(static_cast<int>(argv.size()), argv.data());
}

Outcome end_to_end(Clock::time_point started) {
  Report r;
  const fs::path fx = NPR_FIXTURE_DIR, golden = NPR_GOLDEN_DIR;
  const std::string cam = "from=0.3,0.6,1;size=96x72";
  struct Case {
    std::string name;
    std::vector<std::string> args;
    std::vector<std::string> files;
    bool animate;
  };
  const std::vector<Case> cases{
      {"ico_gooch", {"render", (fx / "icosphere.obj").string(), "--style", "gooch", "--camera", cam},
       {"out.ppm", "out.svg"}, false},
      {"wave_md2", {"animate", (fx / "wave.md2").string(), "--frames", "3", "--camera", cam, "--svg"},
       {"frame_0000.ppm", "frame_0001.ppm", "frame_0002.ppm", "frame_0000.svg", "frame_0001.svg", "frame_0002.svg"},
       true},
  };
  int files = 0;
  for (const Case& c : cases) {
    std::vector<std::string> outs[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = fs::path(NPR_WORK_DIR) / ("acceptance_" + c.name + std::to_string(run));
      fs::remove_all(dir);
      fs::create_directories(dir);
      std::vector<std::string> args = c.args;
      if (c.animate) {
        args.insert(args.end(), {"--outdir", dir.string()});
      } else {
        for (const auto& f : c.files) args.insert(args.end(), {"-o", (dir / f).string()});
      }
      r.expect(run_cli(args) == 0, c.name + " command failed");
      for (const auto& f : c.files) outs[run].push_back(slurp(dir / f));
    }
    for (std::size_t i = 0; i < c.files.size(); ++i) {
      ++files;
      r.expect(!outs[0][i].empty() && outs[0][i] == outs[1][i], c.name + "/" + c.files[i] + " differs between runs");
      r.expect(outs[0][i] == slurp(golden / c.name / c.files[i]), c.name + "/" + c.files[i] + " differs from golden");
    }
  }
  const double elapsed = seconds_since(started);
  r.expect(elapsed < 60.0, "acceptance run over 60 s");
  r.note(std::to_string(files) + " render/animate outputs bit-identical across two runs and equal to goldens; "
         "acceptance elapsed " + fmt("%.1f", elapsed) + " s");
  return r.finish();
}

Outcome performance() {
  Report r;
  const Surface s = primitives::torus(1.0, 0.4, 250, 100).build();
  const MeshState st = static_state(s);
  const CurvatureField f = full_curvature(s, st);
  std::vector<double> ms;
  for (int frame = 0; frame < 7; ++frame) {
    Camera cam;
    const double a = 0.4 * frame;
    cam.eye = Vec3(4 * std::cos(a), 4 * std::sin(a), 2.0 + 0.3 * frame);
    cam.up = Vec3::UnitZ();
    const auto t0 = Clock::now();
    const ContourSet sil = extract_silhouettes(s, st, cam);
    const ContourSet sug = extract_suggestive(s, st, f, cam);
    ms.push_back(1000.0 * seconds_since(t0));
    (void)sil;
    (void)sug;
  }
  std::sort(ms.begin(), ms.end());
  const double median = ms[ms.size() / 2];
  r.expect(median < 100.0, "median " + fmt("%.1f", median) + " ms per frame");
  r.note(std::to_string(s.face_count()) + " triangles: median " + fmt("%.1f", median) + " ms, max " +
         fmt("%.1f", ms.back()) + " ms per frame (curvature precomputed; non-gating)");
  Outcome o = r.finish();
  o.gating = false;
  return o;
}

}  // namespace

int main() {
  const auto started = Clock::now();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"curvature accuracy", curvature_accuracy},
      {"contour correctness", contour_correctness},
      {"silhouette geometry", silhouette_geometry},
      {"animation identities", animation_identities},
      {"MD2 loader", md2_loader},
      {"rasterizer", rasterizer},
      {"splines", splines},
      {"lapped", lapped},
      {"end-to-end determinism", [&] { return end_to_end(started); }},
      {"performance (soft target)", performance},
  };
  int unexpected = 0, passed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << ": " << o.detail;
    if (!o.pass && o.known_failure) std::cout << " (known, documented)";
    if (!o.pass && !o.gating) std::cout << " (non-gating)";
    std::cout << '\n';
    if (o.pass) ++passed;
    else if (o.gating && !o.known_failure) ++unexpected;
  }
  std::cout << passed << "/" << criteria.size() << " criteria passed, " << unexpected << " unexpected failures\n";
  return unexpected == 0 ? 0 : 1;
}
