#pragma once

#include <array>
#include <span>
#include <vector>

#include "npr/curvature.hpp"
#include "npr/mesh.hpp"

namespace npr {

/// Unit tangent per face, lying in the face plane.
struct TangentField {
  std::vector<Vec3> vectors;
};

/// Per-face vectors from the incident vertices' e1 (sign-aligned to the
/// first corner, projected to the face plane), then `iterations` rounds of
/// neighbor averaging. Throws MissingCurvature.
TangentField build_tangent_field(const Surface& surface, const CurvatureField& curvature,
                                 int iterations);

/// Sum over adjacent face pairs of dot(t_f, t_g).
double field_alignment(const Surface& surface, const TangentField& field);

/// Faces reachable from `seed` across shared edges whose centroids lie in
/// the box |d.t| <= radius, |d.(n x t)| <= radius of the seed frame.
/// The seed comes first, then breadth-first order. Throws InvalidSeed.
std::vector<FaceId> grow_patch(const Surface& surface, const TangentField& field, FaceId seed,
                               double radius);

struct Patch {
  FaceId seed = kInvalid;
  std::vector<FaceId> faces;
  std::vector<std::array<Vec2, 3>> uvs;  // per face, corners in face_vertices order
};

/// Least-squares local parameterization whose u and v gradients follow the
/// field and its in-plane perpendicular. faces[0] is the seed: its first
/// corner maps to (0, 0) and its second to the field-frame coordinates of
/// the first edge. Throws SingularSystem for disconnected or degenerate patches.
Patch parameterize_patch(const Surface& surface, std::span<const FaceId> faces,
                         const TangentField& field);

/// Seeds at the lowest uncovered face until every face is covered.
std::vector<Patch> cover_surface(const Surface& surface, const TangentField& field, double radius);

}  // namespace npr
