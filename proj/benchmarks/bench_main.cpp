#include <benchmark/benchmark.h>

#include <cmath>

#include "npr/contours.hpp"
#include "npr/curvature.hpp"
#include "npr/lapped.hpp"
#include "npr/primitives.hpp"
#include "npr/raster.hpp"
#include "npr/shading.hpp"

using namespace npr;

namespace {

// 250 x 100 x 2 = 50k triangles.
const Surface& big_torus() {
  static const Surface s = primitives::torus(1.0, 0.4, 250, 100).build();
  return s;
}

const CurvatureField& big_torus_curvature() {
  static const CurvatureField f = [] {
    const Surface& s = big_torus();
    CurvatureField c = estimate_curvature(s, static_state(s));
    estimate_curvature_derivative(s, static_state(s), c);
    return c;
  }();
  return f;
}

Camera orbit(int frame) {
  Camera cam;
  const double a = 0.4 * frame;
  cam.eye = Vec3(4 * std::cos(a), 4 * std::sin(a), 2.0);
  cam.up = Vec3::UnitZ();
  return cam;
}

void BM_Curvature(benchmark::State& state) {
  const Surface s = primitives::icosphere(static_cast<int>(state.range(0))).build();
  const MeshState st = static_state(s);
  for (auto _ : state) {
    CurvatureField f = estimate_curvature(s, st);
    estimate_curvature_derivative(s, st, f);
    benchmark::DoNotOptimize(f.k1.data());
  }
  state.counters["faces"] = static_cast<double>(s.face_count());
}
BENCHMARK(BM_Curvature)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Silhouette50k(benchmark::State& state) {
  const Surface& s = big_torus();
  const MeshState st = static_state(s);
  int frame = 0;
  for (auto _ : state) benchmark::DoNotOptimize(extract_silhouettes(s, st, orbit(frame++ % 8)));
}
BENCHMARK(BM_Silhouette50k)->Unit(benchmark::kMillisecond);

void BM_SilhouetteSuggestive50k(benchmark::State& state) {
  const Surface& s = big_torus();
  const MeshState st = static_state(s);
  const CurvatureField& f = big_torus_curvature();
  int frame = 0;
  for (auto _ : state) {
    const Camera cam = orbit(frame++ % 8);
    benchmark::DoNotOptimize(extract_silhouettes(s, st, cam));
    benchmark::DoNotOptimize(extract_suggestive(s, st, f, cam));
  }
}
BENCHMARK(BM_SilhouetteSuggestive50k)->Unit(benchmark::kMillisecond);

void BM_RasterGooch(benchmark::State& state) {
  const Surface& s = big_torus();
  const MeshState st = static_state(s);
  Camera cam = orbit(1);
  cam.width = cam.height = static_cast<int>(state.range(0));
  Framebuffer fb(cam.width, cam.height);
  for (auto _ : state) {
    fb.clear(Color(1, 1, 1));
    rasterize_surface(s, st, cam, GoochShader{}, fb);
    benchmark::DoNotOptimize(fb);
  }
}
BENCHMARK(BM_RasterGooch)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_LappedCover(benchmark::State& state) {
  const Surface s = primitives::torus(1.0, 0.35, 80, 40).build();
  const TangentField t = build_tangent_field(s, estimate_curvature(s, static_state(s)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(cover_surface(s, t, 0.35));
}
BENCHMARK(BM_LappedCover)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
