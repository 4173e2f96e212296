// Writes the sample inputs used by the examples and tests:
// icosphere.obj, torus.obj, wave.md2 (two keyframes) and bend.zskin.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "json.hpp"
#include "npr/io.hpp"
#include "npr/primitives.hpp"

namespace fs = std::filesystem;
using namespace npr;

namespace {

std::uint8_t nearest_normal(const Vec3& n) {
  const auto table = md2_normal_table();
  int best = 0;
  double best_dot = -2.0;
  for (int i = 0; i < static_cast<int>(table.size()); ++i) {
    const double d = n.dot(Vec3(table[i][0], table[i][1], table[i][2]));
    if (d > best_dot) {
      best_dot = d;
      best = i;
    }
  }
  return static_cast<std::uint8_t>(best);
}

Md2Frame quantize(const std::string& name, const Surface& s) {
  Vec3 lo = s.positions().front(), hi = lo;
  for (const Vec3& p : s.positions()) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  Md2Frame f;
  f.name = name;
  for (int k = 0; k < 3; ++k) {
    f.scale[k] = static_cast<float>((hi[k] - lo[k]) / 255.0);
    f.translate[k] = static_cast<float>(lo[k]);
  }
  for (std::size_t v = 0; v < s.vertex_count(); ++v) {
    std::array<std::uint8_t, 4> q{};
    for (int k = 0; k < 3; ++k)
      q[k] = static_cast<std::uint8_t>(std::lround((s.positions()[v][k] - f.translate[k]) / f.scale[k]));
    q[3] = nearest_normal(s.normals()[v]);
    f.vertices.push_back(q);
  }
  return f;
}

void write_md2_fixture(const fs::path& path) {
  const primitives::MeshData base = primitives::icosphere(2);
  primitives::MeshData bulged = base;
  for (Vec3& p : bulged.positions) p = Vec3(p.x() * (1.0 + 0.25 * p.y()), 1.2 * p.y(), p.z() * 0.8);
  Md2Document doc;
  doc.texcoords.push_back({0, 0});
  // MD2 front faces are clockwise.
  for (const Triangle& t : base.triangles)
    doc.triangles.push_back({static_cast<std::int16_t>(t[0]), static_cast<std::int16_t>(t[2]),
                             static_cast<std::int16_t>(t[1]), 0, 0, 0});
  doc.frames.push_back(quantize("wave01", base.build()));
  doc.frames.push_back(quantize("wave02", bulged.build()));
  const auto bytes = write_md2(doc);
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void write_bend_fixture(const fs::path& path) {
  using nlohmann::json;
  const primitives::MeshData tube = primitives::cylinder(0.25, 2.0, 24, 16);
  json doc;
  doc["format"] = "zskin-1";
  doc["positions"] = json::array();
  doc["weights"] = json::array();
  for (const Vec3& p : tube.positions) {
    const Vec3 q(p.z() + 1.0, p.x(), p.y());  // bar along +x from 0 to 2
    doc["positions"].push_back({q.x(), q.y(), q.z()});
    const double s = std::clamp((q.x() - 0.7) / 0.6, 0.0, 1.0);
    const double w = s * s * (3.0 - 2.0 * s);
    if (w == 0.0) doc["weights"].push_back({{0, 1.0}});
    else if (w == 1.0) doc["weights"].push_back({{1, 1.0}});
    else doc["weights"].push_back({{0, 1.0 - w}, {1, w}});
  }
  doc["triangles"] = json::array();
  for (const Triangle& t : tube.triangles) doc["triangles"].push_back({t[0], t[1], t[2]});
  doc["bones"] = {{{"name", "root"}, {"parent", nullptr}, {"rotation", {1, 0, 0, 0}}, {"translation", {0, 0, 0}}},
                  {{"name", "tip"}, {"parent", 0}, {"rotation", {1, 0, 0, 0}}, {"translation", {1, 0, 0}}}};
  const double h = 0.5 * 60.0 * kPi / 180.0;
  doc["animations"] = {
      {{"name", "bend"},
       {"tracks",
        {{{"bone", 1},
          {"keys",
           {{{"time", 0.0}, {"rotation", {1, 0, 0, 0}}, {"translation", {1, 0, 0}}},
            {{"time", 1.0}, {"rotation", {std::cos(h), 0, 0, std::sin(h)}}, {"translation", {1, 0, 0}}}}}}}}}};
  std::ofstream(path) << doc.dump(1) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? argv[1] : ".";
  try {
    fs::create_directories(dir);
    write_obj(primitives::icosphere(3).build(), dir / "icosphere.obj");
    write_obj(primitives::torus(1.0, 0.4, 64, 32).build(), dir / "torus.obj");
    write_md2_fixture(dir / "wave.md2");
    write_bend_fixture(dir / "bend.zskin");
  } catch (const std::exception& e) {
    std::cerr << "nprkit-fixtures: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
