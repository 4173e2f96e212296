#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <typeindex>
#include <utility>
#include <vector>

#include "npr/error.hpp"
#include "npr/math.hpp"

namespace npr {

using VertexId = int;
using HalfedgeId = int;
using FaceId = int;
using EdgeId = int;

inline constexpr int kInvalid = -1;

using Triangle = std::array<VertexId, 3>;

struct Material {
  std::string name = "default";
  Color ambient{0.1, 0.1, 0.1};
  Color diffuse{0.8, 0.8, 0.8};
  Color specular{0.5, 0.5, 0.5};
  double shininess = 32.0;
  /// Path of the diffuse texture image, empty when untextured.
  std::string diffuse_texture;

  /// Clamps colors to [0,1] and shininess to >= 0.
  void sanitize();
};

enum class ElementKind { Vertex, Edge, Face };

/// Typed handle to a named per-element property column.
template <class T>
struct PropertyHandle {
  ElementKind kind;
  std::string name;
};

namespace detail {

struct PropertyColumnBase {
  virtual ~PropertyColumnBase() = default;
  virtual std::unique_ptr<PropertyColumnBase> clone() const = 0;
  virtual std::type_index type() const = 0;
  virtual std::size_t size() const = 0;
};

template <class T>
struct PropertyColumn final : PropertyColumnBase {
  std::vector<T> values;
  explicit PropertyColumn(std::size_t n) : values(n, T{}) {}
  std::unique_ptr<PropertyColumnBase> clone() const override {
    return std::make_unique<PropertyColumn<T>>(*this);
  }
  std::type_index type() const override { return typeid(T); }
  std::size_t size() const override { return values.size(); }
};

}  // namespace detail

/// Named property tables keyed by element kind. Values default-initialize.
class PropertyStore {
 public:
  PropertyStore() = default;
  PropertyStore(const PropertyStore& other);
  PropertyStore& operator=(const PropertyStore& other);
  PropertyStore(PropertyStore&&) noexcept = default;
  PropertyStore& operator=(PropertyStore&&) noexcept = default;

  template <class T>
  PropertyHandle<T> add(ElementKind kind, const std::string& name, std::size_t count) {
    auto key = std::make_pair(kind, name);
    if (columns_.count(key))
      throw Error(ErrorCode::DuplicateName, "property '" + name + "' already exists");
    columns_.emplace(key, std::make_unique<detail::PropertyColumn<T>>(count));
    return {kind, name};
  }

  template <class T>
  PropertyHandle<T> get_handle(ElementKind kind, const std::string& name) const {
    column<T>(kind, name);
    return {kind, name};
  }

  bool contains(ElementKind kind, const std::string& name) const {
    return columns_.count({kind, name}) != 0;
  }

  void remove(ElementKind kind, const std::string& name);

  template <class T>
  std::vector<T>& values(const PropertyHandle<T>& h) {
    return const_cast<std::vector<T>&>(std::as_const(*this).column<T>(h.kind, h.name));
  }
  template <class T>
  const std::vector<T>& values(const PropertyHandle<T>& h) const {
    return column<T>(h.kind, h.name);
  }

 private:
  template <class T>
  const std::vector<T>& column(ElementKind kind, const std::string& name) const {
    auto it = columns_.find({kind, name});
    if (it == columns_.end())
      throw Error(ErrorCode::UnknownProperty, "no property '" + name + "'");
    if (it->second->type() != std::type_index(typeid(T)))
      throw Error(ErrorCode::UnknownProperty, "property '" + name + "' has a different type");
    return static_cast<const detail::PropertyColumn<T>&>(*it->second).values;
  }

  std::map<std::pair<ElementKind, std::string>, std::unique_ptr<detail::PropertyColumnBase>>
      columns_;
};

struct Halfedge {
  VertexId origin = kInvalid;
  HalfedgeId twin = kInvalid;
  HalfedgeId next = kInvalid;
  HalfedgeId prev = kInvalid;
  /// kInvalid marks a boundary halfedge.
  FaceId face = kInvalid;
};

struct BoundingSphere {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
};

/// Half-edge triangle mesh. Faces are counterclockwise seen from outside.
///
/// Connectivity is immutable after construction; positions, normals,
/// material and properties may be changed by the owner.
class Surface {
 public:
  Surface() = default;

  /// Builds the half-edge structure and vertex normals (see compute_vertex_normals).
  /// Throws NonManifoldEdge, DegenerateTriangle or IndexOutOfRange.
  static Surface build(std::vector<Vec3> positions, std::span<const Triangle> triangles);

  std::size_t vertex_count() const { return positions_.size(); }
  std::size_t face_count() const { return face_halfedge_.size(); }
  std::size_t halfedge_count() const { return halfedges_.size(); }
  std::size_t edge_count() const { return edge_halfedge_.size(); }

  const std::vector<Vec3>& positions() const { return positions_; }
  const std::vector<Vec3>& normals() const { return normals_; }
  const Vec3& position(VertexId v) const { return positions_[v]; }
  const Vec3& normal(VertexId v) const { return normals_[v]; }

  /// Replaces vertex positions (same count). Does not touch normals.
  void set_positions(std::vector<Vec3> positions);
  /// Replaces vertex normals; each is normalized.
  void set_normals(std::vector<Vec3> normals);
  /// Recomputes vertex normals from the current positions.
  void recompute_normals();

  const Halfedge& halfedge(HalfedgeId h) const { return halfedges_[h]; }
  const std::vector<Halfedge>& halfedges() const { return halfedges_; }
  VertexId destination(HalfedgeId h) const { return halfedges_[halfedges_[h].twin].origin; }
  bool is_boundary_halfedge(HalfedgeId h) const { return halfedges_[h].face == kInvalid; }

  HalfedgeId face_halfedge(FaceId f) const { return face_halfedge_[f]; }
  Triangle face_vertices(FaceId f) const;
  std::vector<Triangle> triangles() const;

  /// One outgoing halfedge; for boundary vertices the most clockwise
  /// interior one. kInvalid for isolated vertices.
  HalfedgeId vertex_halfedge(VertexId v) const { return vertex_halfedge_[v]; }
  bool is_boundary_vertex(VertexId v) const;

  /// Edge e is represented by the halfedge with the smaller id.
  HalfedgeId edge_halfedge(EdgeId e) const { return edge_halfedge_[e]; }
  EdgeId halfedge_edge(HalfedgeId h) const { return halfedge_edge_[h]; }
  std::pair<VertexId, VertexId> edge_vertices(EdgeId e) const;
  bool is_boundary_edge(EdgeId e) const;

  /// Neighbors in counterclockwise order. Cyclic for interior vertices,
  /// an open fan (first to last) for boundary vertices.
  std::vector<VertexId> one_ring(VertexId v) const;
  /// Faces incident to v in the same order as one_ring.
  std::vector<FaceId> incident_faces(VertexId v) const;
  /// Faces sharing an edge with f.
  std::vector<FaceId> face_neighbors(FaceId f) const;

  /// Unnormalized face normal; its length is twice the face area.
  Vec3 face_area_normal(FaceId f) const;
  Vec3 face_normal(FaceId f) const;
  double face_area(FaceId f) const { return 0.5 * face_area_normal(f).norm(); }
  Vec3 face_centroid(FaceId f) const;

  int euler_characteristic() const {
    return static_cast<int>(vertex_count()) - static_cast<int>(edge_count()) +
           static_cast<int>(face_count());
  }

  Material& material() { return material_; }
  const Material& material() const { return material_; }

  const BoundingSphere& bounding_sphere() const { return bounding_sphere_; }
  double feature_size() const { return feature_size_; }
  /// Recomputes bounding sphere and feature size from the positions.
  void update_extent();

  PropertyStore& properties() { return properties_; }
  const PropertyStore& properties() const { return properties_; }

  template <class T>
  PropertyHandle<T> add_property(ElementKind kind, const std::string& name) {
    return properties_.add<T>(kind, name, element_count(kind));
  }
  template <class T>
  PropertyHandle<T> property(ElementKind kind, const std::string& name) const {
    return properties_.get_handle<T>(kind, name);
  }
  template <class T>
  T& get(const PropertyHandle<T>& h, int element) {
    return properties_.values(h).at(element);
  }
  template <class T>
  const T& get(const PropertyHandle<T>& h, int element) const {
    return properties_.values(h).at(element);
  }
  template <class T>
  void set(const PropertyHandle<T>& h, int element, T value) {
    properties_.values(h).at(element) = std::move(value);
  }
  bool has_property(ElementKind kind, const std::string& name) const {
    return properties_.contains(kind, name);
  }
  void remove_property(ElementKind kind, const std::string& name) {
    properties_.remove(kind, name);
  }

  std::size_t element_count(ElementKind kind) const;

 private:
  std::vector<Vec3> positions_;
  std::vector<Vec3> normals_;
  std::vector<Halfedge> halfedges_;
  std::vector<HalfedgeId> face_halfedge_;
  std::vector<HalfedgeId> vertex_halfedge_;
  std::vector<HalfedgeId> edge_halfedge_;
  std::vector<EdgeId> halfedge_edge_;
  Material material_;
  BoundingSphere bounding_sphere_;
  double feature_size_ = 0.0;
  PropertyStore properties_;
};

/// Free-function forms of the Surface queries.
inline Surface build_mesh(std::vector<Vec3> positions, std::span<const Triangle> triangles) {
  return Surface::build(std::move(positions), triangles);
}

std::vector<VertexId> vertex_one_ring(const Surface& surface, VertexId v);

/// Centroid pass followed by a grow-to-contain pass. Radius is at most
/// twice the minimal enclosing radius. Throws EmptyMesh.
BoundingSphere compute_bounding_sphere(std::span<const Vec3> points);
BoundingSphere compute_bounding_sphere(const Surface& surface);

/// Mean edge length. Throws EmptyMesh when there are no edges.
double compute_feature_size(const Surface& surface);
double compute_feature_size(const Surface& surface, std::span<const Vec3> positions);

/// Vertex normals as face normals averaged with Max's weights
/// sin(angle) / (|a| |b|) per corner, falling back to area weights.
std::vector<Vec3> compute_vertex_normals(const Surface& surface, std::span<const Vec3> positions);

}  // namespace npr
