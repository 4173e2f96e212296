#pragma once

#include "npr/mesh.hpp"

namespace npr::primitives {

struct MeshData {
  std::vector<Vec3> positions;
  std::vector<Triangle> triangles;

  Surface build() const { return Surface::build(positions, triangles); }
};

MeshData tetrahedron();
MeshData octahedron();
MeshData icosahedron(double radius = 1.0);
/// Icosahedron subdivided `levels` times (4^levels × 20 faces), projected to the sphere.
MeshData icosphere(int levels, double radius = 1.0);
/// Torus around the z axis. `major` is the ring radius, `minor` the tube radius.
MeshData torus(double major, double minor, int ring_segments, int tube_segments);
/// Flat grid in the z=0 plane, (nx+1)×(ny+1) vertices, centered on the origin.
MeshData grid(int nx, int ny, double spacing);
/// Height field z = height(x, y) over a centered grid.
template <class F>
MeshData height_field(int nx, int ny, double spacing, F&& height) {
  MeshData m = grid(nx, ny, spacing);
  for (auto& p : m.positions) p.z() = height(p.x(), p.y());
  return m;
}
/// Open cylinder along z, no caps, centered on the origin.
MeshData cylinder(double radius, double height, int around, int along);
/// Apex at the origin surrounded by `n` rim vertices on the unit circle.
MeshData fan(int n);
/// Axis-aligned cube of the given edge length; each face has its own four
/// vertices so normals are discontinuous across the cube edges.
MeshData split_cube(double size);

}  // namespace npr::primitives
