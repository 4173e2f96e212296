#include "npr/mesh.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace npr {

void Material::sanitize() {
  ambient = clamp01(ambient);
  diffuse = clamp01(diffuse);
  specular = clamp01(specular);
  shininess = std::max(0.0, shininess);
}

PropertyStore::PropertyStore(const PropertyStore& other) {
  for (const auto& [key, col] : other.columns_) columns_.emplace(key, col->clone());
}

PropertyStore& PropertyStore::operator=(const PropertyStore& other) {
  if (this != &other) {
    PropertyStore copy(other);
    columns_ = std::move(copy.columns_);
  }
  return *this;
}

void PropertyStore::remove(ElementKind kind, const std::string& name) {
  if (columns_.erase({kind, name}) == 0)
    throw Error(ErrorCode::UnknownProperty, "no property '" + name + "'");
}

namespace {

std::uint64_t directed_key(VertexId a, VertexId b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

Surface Surface::build(std::vector<Vec3> positions, std::span<const Triangle> triangles) {
  Surface s;
  const int nv = static_cast<int>(positions.size());
  s.positions_ = std::move(positions);

  for (std::size_t f = 0; f < triangles.size(); ++f) {
    const Triangle& t = triangles[f];
    for (VertexId v : t)
      if (v < 0 || v >= nv)
        throw Error(ErrorCode::IndexOutOfRange,
                    "triangle " + std::to_string(f) + " references vertex " + std::to_string(v));
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw Error(ErrorCode::DegenerateTriangle,
                  "triangle " + std::to_string(f) + " repeats a vertex");
  }

  std::unordered_map<std::uint64_t, HalfedgeId> directed;
  directed.reserve(triangles.size() * 3);
  s.halfedges_.reserve(triangles.size() * 3 + 16);
  s.face_halfedge_.reserve(triangles.size());

  for (std::size_t f = 0; f < triangles.size(); ++f) {
    const Triangle& t = triangles[f];
    const HalfedgeId base = static_cast<HalfedgeId>(s.halfedges_.size());
    for (int k = 0; k < 3; ++k) {
      const VertexId a = t[k], b = t[(k + 1) % 3];
      if (!directed.emplace(directed_key(a, b), base + k).second)
        throw Error(ErrorCode::NonManifoldEdge,
                    "edge (" + std::to_string(a) + "," + std::to_string(b) +
                        ") is shared by more than two faces or inconsistently oriented");
      Halfedge h;
      h.origin = a;
      h.next = base + (k + 1) % 3;
      h.prev = base + (k + 2) % 3;
      h.face = static_cast<FaceId>(f);
      s.halfedges_.push_back(h);
    }
    s.face_halfedge_.push_back(base);
  }

  // Pair twins; unmatched interior halfedges get a boundary twin.
  const HalfedgeId interior_count = static_cast<HalfedgeId>(s.halfedges_.size());
  for (HalfedgeId h = 0; h < interior_count; ++h) {
    if (s.halfedges_[h].twin != kInvalid) continue;
    const VertexId a = s.halfedges_[h].origin;
    const VertexId b = s.halfedges_[s.halfedges_[h].next].origin;
    auto it = directed.find(directed_key(b, a));
    if (it != directed.end()) {
      s.halfedges_[h].twin = it->second;
      s.halfedges_[it->second].twin = h;
    } else {
      Halfedge bh;
      bh.origin = b;
      bh.twin = h;
      const HalfedgeId id = static_cast<HalfedgeId>(s.halfedges_.size());
      s.halfedges_.push_back(bh);
      s.halfedges_[h].twin = id;
    }
  }

  // Boundary next: from boundary e ending at v, rotate counterclockwise
  // around v through interior halfedges until an outgoing boundary one.
  for (HalfedgeId e = interior_count; e < static_cast<HalfedgeId>(s.halfedges_.size()); ++e) {
    HalfedgeId h = s.halfedges_[e].twin;  // interior, origin = dest(e)
    while (s.halfedges_[h].face != kInvalid) h = s.halfedges_[s.halfedges_[h].prev].twin;
    s.halfedges_[e].next = h;
    s.halfedges_[h].prev = e;
  }

  s.vertex_halfedge_.assign(nv, kInvalid);
  for (HalfedgeId h = 0; h < interior_count; ++h) {
    const VertexId v = s.halfedges_[h].origin;
    const bool twin_boundary = s.halfedges_[s.halfedges_[h].twin].face == kInvalid;
    if (s.vertex_halfedge_[v] == kInvalid || twin_boundary) s.vertex_halfedge_[v] = h;
  }

  s.halfedge_edge_.assign(s.halfedges_.size(), kInvalid);
  for (HalfedgeId h = 0; h < static_cast<HalfedgeId>(s.halfedges_.size()); ++h) {
    if (s.halfedge_edge_[h] != kInvalid) continue;
    const EdgeId e = static_cast<EdgeId>(s.edge_halfedge_.size());
    s.edge_halfedge_.push_back(h);
    s.halfedge_edge_[h] = e;
    s.halfedge_edge_[s.halfedges_[h].twin] = e;
  }

  s.normals_ = compute_vertex_normals(s, s.positions_);
  if (nv > 0) s.update_extent();
  return s;
}

void Surface::set_positions(std::vector<Vec3> positions) {
  if (positions.size() != positions_.size())
    throw Error(ErrorCode::IndexOutOfRange, "position count does not match vertex count");
  positions_ = std::move(positions);
}

void Surface::set_normals(std::vector<Vec3> normals) {
  if (normals.size() != positions_.size())
    throw Error(ErrorCode::IndexOutOfRange, "normal count does not match vertex count");
  for (auto& n : normals) n = normalized_or(n, Vec3::UnitZ());
  normals_ = std::move(normals);
}

void Surface::recompute_normals() { normals_ = compute_vertex_normals(*this, positions_); }

Triangle Surface::face_vertices(FaceId f) const {
  const HalfedgeId h = face_halfedge_[f];
  const Halfedge& h0 = halfedges_[h];
  return {h0.origin, halfedges_[h0.next].origin, halfedges_[h0.prev].origin};
}

std::vector<Triangle> Surface::triangles() const {
  std::vector<Triangle> out(face_count());
  for (FaceId f = 0; f < static_cast<FaceId>(face_count()); ++f) out[f] = face_vertices(f);
  return out;
}

bool Surface::is_boundary_vertex(VertexId v) const {
  const HalfedgeId h = vertex_halfedge_.at(v);
  return h == kInvalid || halfedges_[halfedges_[h].twin].face == kInvalid;
}

std::pair<VertexId, VertexId> Surface::edge_vertices(EdgeId e) const {
  const HalfedgeId h = edge_halfedge_[e];
  return {halfedges_[h].origin, destination(h)};
}

bool Surface::is_boundary_edge(EdgeId e) const {
  const HalfedgeId h = edge_halfedge_[e];
  return halfedges_[h].face == kInvalid || halfedges_[halfedges_[h].twin].face == kInvalid;
}

std::vector<VertexId> Surface::one_ring(VertexId v) const {
  if (v < 0 || v >= static_cast<VertexId>(vertex_count()))
    throw Error(ErrorCode::InvalidVertex, "vertex " + std::to_string(v));
  std::vector<VertexId> ring;
  const HalfedgeId start = vertex_halfedge_[v];
  if (start == kInvalid) return ring;
  HalfedgeId h = start;
  do {
    ring.push_back(destination(h));
    if (halfedges_[h].face == kInvalid) break;  // reached the far side of a boundary fan
    h = halfedges_[halfedges_[h].prev].twin;
  } while (h != start);
  return ring;
}

std::vector<FaceId> Surface::incident_faces(VertexId v) const {
  if (v < 0 || v >= static_cast<VertexId>(vertex_count()))
    throw Error(ErrorCode::InvalidVertex, "vertex " + std::to_string(v));
  std::vector<FaceId> faces;
  const HalfedgeId start = vertex_halfedge_[v];
  if (start == kInvalid) return faces;
  HalfedgeId h = start;
  do {
    if (halfedges_[h].face == kInvalid) break;
    faces.push_back(halfedges_[h].face);
    h = halfedges_[halfedges_[h].prev].twin;
  } while (h != start);
  return faces;
}

std::vector<FaceId> Surface::face_neighbors(FaceId f) const {
  std::vector<FaceId> out;
  HalfedgeId h = face_halfedge_[f];
  for (int k = 0; k < 3; ++k) {
    const FaceId g = halfedges_[halfedges_[h].twin].face;
    if (g != kInvalid) out.push_back(g);
    h = halfedges_[h].next;
  }
  return out;
}

Vec3 Surface::face_area_normal(FaceId f) const {
  const Triangle t = face_vertices(f);
  return (positions_[t[1]] - positions_[t[0]]).cross(positions_[t[2]] - positions_[t[0]]);
}

Vec3 Surface::face_normal(FaceId f) const {
  return normalized_or(face_area_normal(f), Vec3::UnitZ());
}

Vec3 Surface::face_centroid(FaceId f) const {
  const Triangle t = face_vertices(f);
  return (positions_[t[0]] + positions_[t[1]] + positions_[t[2]]) / 3.0;
}

void Surface::update_extent() {
  bounding_sphere_ = compute_bounding_sphere(positions_);
  feature_size_ = edge_count() > 0 ? compute_feature_size(*this) : 0.0;
}

std::size_t Surface::element_count(ElementKind kind) const {
  switch (kind) {
    case ElementKind::Vertex: return vertex_count();
    case ElementKind::Edge: return edge_count();
    case ElementKind::Face: return face_count();
  }
  return 0;
}

std::vector<VertexId> vertex_one_ring(const Surface& surface, VertexId v) {
  return surface.one_ring(v);
}

BoundingSphere compute_bounding_sphere(std::span<const Vec3> points) {
  if (points.empty()) throw Error(ErrorCode::EmptyMesh, "bounding sphere of no points");
  Vec3 center = Vec3::Zero();
  for (const Vec3& p : points) center += p;
  center /= static_cast<double>(points.size());

  // Grow pass. Starting at the centroid the sphere only ever needs to
  // expand its radius, so the center stays put.
  double radius = 0.0;
  for (const Vec3& p : points) radius = std::max(radius, (p - center).norm());
  return {center, radius};
}

BoundingSphere compute_bounding_sphere(const Surface& surface) {
  return compute_bounding_sphere(surface.positions());
}

double compute_feature_size(const Surface& surface) {
  return compute_feature_size(surface, surface.positions());
}

double compute_feature_size(const Surface& surface, std::span<const Vec3> positions) {
  if (surface.edge_count() == 0) throw Error(ErrorCode::EmptyMesh, "feature size needs edges");
  double total = 0.0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(surface.edge_count()); ++e) {
    const auto [a, b] = surface.edge_vertices(e);
    total += (positions[a] - positions[b]).norm();
  }
  return total / static_cast<double>(surface.edge_count());
}

std::vector<Vec3> compute_vertex_normals(const Surface& surface, std::span<const Vec3> positions) {
  // Max's corner weights: cross(a, b) / (|a|^2 |b|^2). Exact for vertices on a sphere.
  std::vector<Vec3> acc(positions.size(), Vec3::Zero());
  std::vector<Vec3> area(positions.size(), Vec3::Zero());
  for (FaceId f = 0; f < static_cast<FaceId>(surface.face_count()); ++f) {
    const Triangle t = surface.face_vertices(f);
    for (int k = 0; k < 3; ++k) {
      const Vec3 a = positions[t[(k + 1) % 3]] - positions[t[k]];
      const Vec3 b = positions[t[(k + 2) % 3]] - positions[t[k]];
      const Vec3 n = a.cross(b);
      const double denom = a.squaredNorm() * b.squaredNorm();
      if (denom > 0.0) acc[t[k]] += n / denom;
      area[t[k]] += n;
    }
  }
  for (std::size_t v = 0; v < acc.size(); ++v)
    acc[v] = normalized_or(acc[v], normalized_or(area[v], Vec3::UnitZ()));
  return acc;
}

}  // namespace npr
