#include "npr/primitives.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace npr::primitives {

MeshData tetrahedron() {
  MeshData m;
  m.positions = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  m.triangles = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return m;
}

MeshData octahedron() {
  MeshData m;
  m.positions = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  m.triangles = {{4, 0, 2}, {4, 2, 1}, {4, 1, 3}, {4, 3, 0},
                 {5, 2, 0}, {5, 1, 2}, {5, 3, 1}, {5, 0, 3}};
  return m;
}

MeshData icosahedron(double radius) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  MeshData m;
  m.positions = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
                 {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
                 {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : m.positions) p = p.normalized() * radius;
  m.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                 {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                 {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                 {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return m;
}

MeshData icosphere(int levels, double radius) {
  MeshData m = icosahedron(1.0);
  for (int level = 0; level < levels; ++level) {
    std::unordered_map<std::uint64_t, VertexId> midpoint;
    auto mid = [&](VertexId a, VertexId b) {
      const auto lo = static_cast<std::uint64_t>(std::min(a, b));
      const auto hi = static_cast<std::uint64_t>(std::max(a, b));
      const std::uint64_t key = (lo << 32) | hi;
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const VertexId id = static_cast<VertexId>(m.positions.size());
      m.positions.push_back(((m.positions[a] + m.positions[b]) * 0.5).normalized());
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<Triangle> next;
    next.reserve(m.triangles.size() * 4);
    for (const auto& t : m.triangles) {
      const VertexId ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.triangles = std::move(next);
  }
  for (auto& p : m.positions) p *= radius;
  return m;
}

MeshData torus(double major, double minor, int ring_segments, int tube_segments) {
  MeshData m;
  for (int i = 0; i < ring_segments; ++i) {
    const double u = 2.0 * kPi * i / ring_segments;
    for (int j = 0; j < tube_segments; ++j) {
      const double v = 2.0 * kPi * j / tube_segments;
      const double rho = major + minor * std::cos(v);
      m.positions.emplace_back(rho * std::cos(u), rho * std::sin(u), minor * std::sin(v));
    }
  }
  auto id = [&](int i, int j) {
    return ((i % ring_segments) * tube_segments) + (j % tube_segments);
  };
  for (int i = 0; i < ring_segments; ++i)
    for (int j = 0; j < tube_segments; ++j) {
      const VertexId a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      m.triangles.push_back({a, b, c});
      m.triangles.push_back({a, c, d});
    }
  return m;
}

MeshData grid(int nx, int ny, double spacing) {
  MeshData m;
  const double x0 = -0.5 * nx * spacing, y0 = -0.5 * ny * spacing;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) m.positions.emplace_back(x0 + i * spacing, y0 + j * spacing, 0.0);
  auto id = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const VertexId a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      m.triangles.push_back({a, b, c});
      m.triangles.push_back({a, c, d});
    }
  return m;
}

MeshData cylinder(double radius, double height, int around, int along) {
  MeshData m;
  for (int j = 0; j <= along; ++j) {
    const double z = -0.5 * height + height * j / along;
    for (int i = 0; i < around; ++i) {
      const double a = 2.0 * kPi * i / around;
      m.positions.emplace_back(radius * std::cos(a), radius * std::sin(a), z);
    }
  }
  auto id = [&](int i, int j) { return j * around + (i % around); };
  for (int j = 0; j < along; ++j)
    for (int i = 0; i < around; ++i) {
      const VertexId a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      m.triangles.push_back({a, b, c});
      m.triangles.push_back({a, c, d});
    }
  return m;
}

MeshData fan(int n) {
  MeshData m;
  m.positions.emplace_back(0.0, 0.0, 0.0);
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * kPi * i / n;
    m.positions.emplace_back(std::cos(a), std::sin(a), 0.0);
  }
  for (int i = 0; i < n; ++i) m.triangles.push_back({0, 1 + i, 1 + (i + 1) % n});
  return m;
}

MeshData split_cube(double size) {
  MeshData m;
  const double h = 0.5 * size;
  // normal axis, sign
  for (int axis = 0; axis < 3; ++axis)
    for (int sign = -1; sign <= 1; sign += 2) {
      const int u = (axis + 1) % 3, v = (axis + 2) % 3;
      const VertexId base = static_cast<VertexId>(m.positions.size());
      const double corners[4][2] = {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
      for (const auto& c : corners) {
        Vec3 p;
        p[axis] = sign * h;
        p[u] = c[0];
        p[v] = c[1];
        m.positions.push_back(p);
      }
      if (sign > 0) {
        m.triangles.push_back({base, base + 1, base + 2});
        m.triangles.push_back({base, base + 2, base + 3});
      } else {
        m.triangles.push_back({base, base + 2, base + 1});
        m.triangles.push_back({base, base + 3, base + 2});
      }
    }
  return m;
}

}  // namespace npr::primitives
