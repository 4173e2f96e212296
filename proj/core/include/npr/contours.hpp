#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "npr/animation.hpp"
#include "npr/camera.hpp"
#include "npr/curvature.hpp"
#include "npr/mesh.hpp"

namespace npr {

using ScalarField = std::vector<double>;

/// A point where the field crosses zero on edge (a, b) of the mesh, at
/// position a + t (b - a) with a, b the edge's endpoints in edge_vertices order.
struct ContourPoint {
  Vec3 position = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();  // interpolated, unit
  double ndotv = std::numeric_limits<double>::quiet_NaN();
  double strength = std::numeric_limits<double>::quiet_NaN();
  EdgeId edge = kInvalid;
  double t = 0.0;
};

struct Polyline {
  std::vector<ContourPoint> points;
  bool closed = false;
};

struct ContourSet {
  std::string name;
  std::vector<Polyline> polylines;
  /// Sorted ids of every edge the field changes sign across.
  std::vector<EdgeId> crossing_edges;
  bool has_ndotv = false;
  bool has_strength = false;
  std::optional<Camera> camera;

  std::size_t point_count() const;
};

/// g(p) = n . (eye - p) for perspective cameras, n . (-forward) for
/// orthographic ones.
ScalarField silhouette_field(const MeshState& state, const Camera& camera);

/// Normal curvature in the direction of the view vector projected to the
/// tangent plane. Falls back to k1 where that projection vanishes.
/// Throws MissingCurvature.
ScalarField radial_curvature_field(const Surface& surface, const MeshState& state,
                                   const CurvatureField& curvature, const Camera& camera);

/// Directional derivative of the radial curvature along the projected
/// view direction, per vertex. Requires the curvature derivative.
ScalarField radial_curvature_derivative_field(const MeshState& state,
                                              const CurvatureField& curvature,
                                              const Camera& camera);

/// Optional inputs for per-point attributes.
struct PointAttributes {
  const Camera* camera = nullptr;  // enables n.v
  std::span<const double> strength;  // per-vertex values, interpolated
};

/// Zero level set of a per-vertex field. Vertices with an exact zero are
/// treated as positive. Polylines keep the positive side on their left
/// when faces are seen counterclockwise. Throws FieldLengthMismatch.
ContourSet extract_isocurves(const Surface& surface, const MeshState& state,
                             std::span<const double> field, const PointAttributes& attributes = {});

struct SuggestiveThresholds {
  double derivative = 0.001;  // t_d
  /// Points whose view direction is within this angle of the tangent
  /// plane (|n.v| < sin(angle)) are dropped. Default: |n.v| < 0.1.
  double angle_deg = 5.739170477266787;
};

/// Keeps points with strength > t_d * sin(view angle) / feature_size and
/// |n.v| >= sin(angle), splitting polylines at dropped points.
/// Throws MissingAttributes when strength or n.v were not recorded.
ContourSet trim_suggestive(const ContourSet& contours, const SuggestiveThresholds& thresholds,
                           double feature_size);

ContourSet extract_silhouettes(const Surface& surface, const MeshState& state, const Camera& camera);

/// Requires the curvature derivative.
ContourSet extract_suggestive(const Surface& surface, const MeshState& state,
                              const CurvatureField& curvature, const Camera& camera,
                              const SuggestiveThresholds& thresholds = {});

struct ContourInputs {
  const Surface& surface;
  const MeshState& state;
  const CurvatureField* curvature = nullptr;
  const Camera& camera;
};

/// A contour given by a scalar function evaluated at each vertex, plus an
/// optional per-vertex strength and point filter.
struct ContourDefinition {
  std::string name;
  bool needs_curvature = false;
  std::function<ScalarField(const ContourInputs&)> field;
  std::function<ScalarField(const ContourInputs&)> strength;
  std::function<ContourSet(const ContourSet&, const ContourInputs&)> filter;
};

ContourSet extract_contour(const ContourDefinition& definition, const ContourInputs& inputs);

ContourDefinition silhouette_definition();
ContourDefinition suggestive_definition(const SuggestiveThresholds& thresholds = {});

}  // namespace npr
