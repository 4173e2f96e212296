#pragma once

#include <array>
#include <vector>

#include "npr/animation.hpp"
#include "npr/mesh.hpp"

namespace npr {

/// Per-vertex principal curvatures and directions plus the curvature
/// derivative tensor. The derivative tensor C is symmetric in all three
/// indices; its unique coefficients are stored in the (e1, e2) frame as
///   a = C(e1,e1,e1), b = C(e1,e1,e2), c = C(e1,e2,e2), d = C(e2,e2,e2).
struct CurvatureField {
  std::vector<double> k1;
  std::vector<double> k2;
  std::vector<Vec3> e1;
  std::vector<Vec3> e2;
  std::vector<std::array<double, 4>> dcurv;
  bool has_derivative = false;
  /// Time of the mesh state the field was computed from.
  double time = 0.0;

  std::size_t size() const { return k1.size(); }
};

/// Symmetric 2x2 matrix [[e, f], [f, g]] in some tangent frame.
struct SecondForm2x2 {
  double e = 0.0;
  double f = 0.0;
  double g = 0.0;
};

struct PrincipalFrame {
  double k1 = 0.0;
  double k2 = 0.0;
  Vec3 e1 = Vec3::UnitX();
  Vec3 e2 = Vec3::UnitY();
};

/// Closed-form eigendecomposition of `m` given in the frame (axis_u, axis_v).
/// k1 >= k2; at umbilics (|k1 - k2| < 1e-12) e1 = axis_u.
PrincipalFrame diagonalize_second_form(const SecondForm2x2& m, const Vec3& axis_u,
                                       const Vec3& axis_v);

/// Obtuse-safe Voronoi area of each face corner, indexed [face][corner].
std::vector<std::array<double, 3>> corner_areas(const Surface& surface,
                                                std::span<const Vec3> positions);

/// Principal curvatures from per-face least-squares fits of the second
/// fundamental form. Faces with zero area or an ill-conditioned fit are
/// skipped with a warning.
CurvatureField estimate_curvature(const Surface& surface, const MeshState& state);
/// Same, on the surface's own geometry; the result is also stored as
/// vertex properties (see store_curvature).
CurvatureField estimate_curvature(Surface& surface);

/// Fills `field.dcurv`. Throws MissingCurvature if `field` does not match
/// the mesh.
void estimate_curvature_derivative(const Surface& surface, const MeshState& state,
                                   CurvatureField& field);
void estimate_curvature_derivative(Surface& surface, CurvatureField& field);

/// Vertex property names used by store_curvature / load_curvature.
inline constexpr const char* kPropK1 = "curv.k1";
inline constexpr const char* kPropK2 = "curv.k2";
inline constexpr const char* kPropE1 = "curv.e1";
inline constexpr const char* kPropE2 = "curv.e2";
inline constexpr const char* kPropDcurv = "curv.dcurv";

/// Writes (or overwrites) the field as vertex properties.
void store_curvature(Surface& surface, const CurvatureField& field);
/// Throws MissingCurvature if no curvature properties are present.
CurvatureField load_curvature(const Surface& surface);

}  // namespace npr
