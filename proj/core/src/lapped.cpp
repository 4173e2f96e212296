#include "npr/lapped.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <deque>
#include <unordered_map>

#include "npr/log.hpp"

namespace npr {
namespace {

Vec3 project_to_plane(const Vec3& v, const Vec3& n) { return v - v.dot(n) * n; }

}  // namespace

TangentField build_tangent_field(const Surface& surface, const CurvatureField& curvature,
                                 int iterations) {
  if (curvature.e1.size() != surface.vertex_count())
    throw Error(ErrorCode::MissingCurvature, "tangent field needs principal directions");
  const std::size_t nf = surface.face_count();
  std::vector<Vec3> normals(nf);
  TangentField field;
  field.vectors.resize(nf);
  for (FaceId f = 0; f < static_cast<FaceId>(nf); ++f) {
    const Triangle tri = surface.face_vertices(f);
    const Vec3 n = surface.face_normal(f);
    normals[f] = n;
    const Vec3& ref = curvature.e1[tri[0]];
    Vec3 sum = Vec3::Zero();
    for (VertexId v : tri) {
      const Vec3& d = curvature.e1[v];
      sum += d.dot(ref) < 0.0 ? Vec3(-d) : d;
    }
    const Vec3 edge = surface.position(tri[1]) - surface.position(tri[0]);
    const Vec3 fallback = project_to_plane(edge, n).normalized();
    field.vectors[f] = normalized_or(project_to_plane(sum, n), fallback, 1e-9);
  }
  for (int it = 0; it < iterations; ++it) {
    std::vector<Vec3> next(nf);
    for (FaceId f = 0; f < static_cast<FaceId>(nf); ++f) {
      Vec3 sum = field.vectors[f];
      for (FaceId g : surface.face_neighbors(f)) sum += field.vectors[g];
      next[f] = normalized_or(project_to_plane(sum, normals[f]), field.vectors[f], 1e-9);
    }
    field.vectors = std::move(next);
  }
  return field;
}

double field_alignment(const Surface& surface, const TangentField& field) {
  double s = 0.0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(surface.edge_count()); ++e) {
    const HalfedgeId h = surface.edge_halfedge(e);
    const FaceId a = surface.halfedge(h).face, b = surface.halfedge(surface.halfedge(h).twin).face;
    if (a != kInvalid && b != kInvalid) s += field.vectors[a].dot(field.vectors[b]);
  }
  return s;
}

std::vector<FaceId> grow_patch(const Surface& surface, const TangentField& field, FaceId seed,
                               double radius) {
  if (seed < 0 || seed >= static_cast<FaceId>(surface.face_count()))
    throw Error(ErrorCode::InvalidSeed, "seed face " + std::to_string(seed) + " does not exist");
  if (field.vectors.size() != surface.face_count())
    throw Error(ErrorCode::FieldLengthMismatch, "tangent field does not match the mesh");
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidConfig, "patch radius must be positive");

  const Vec3 t = field.vectors[seed];
  const Vec3 b = surface.face_normal(seed).cross(t);
  const Vec3 c = surface.face_centroid(seed);
  std::vector<char> seen(surface.face_count(), 0);
  std::vector<FaceId> out{seed};
  std::deque<FaceId> queue{seed};
  seen[seed] = 1;
  while (!queue.empty()) {
    const FaceId f = queue.front();
    queue.pop_front();
    for (FaceId g : surface.face_neighbors(f)) {
      if (seen[g]) continue;
      seen[g] = 1;
      const Vec3 d = surface.face_centroid(g) - c;
      if (std::abs(d.dot(t)) <= radius && std::abs(d.dot(b)) <= radius) {
        out.push_back(g);
        queue.push_back(g);
      }
    }
  }
  return out;
}

Patch parameterize_patch(const Surface& surface, std::span<const FaceId> faces,
                         const TangentField& field) {
  if (faces.empty()) throw Error(ErrorCode::SingularSystem, "empty patch");
  if (field.vectors.size() != surface.face_count())
    throw Error(ErrorCode::FieldLengthMismatch, "tangent field does not match the mesh");

  // Connectivity across shared edges.
  std::unordered_map<FaceId, int> in_patch;
  for (FaceId f : faces) {
    if (f < 0 || f >= static_cast<FaceId>(surface.face_count()))
      throw Error(ErrorCode::InvalidSeed, "face " + std::to_string(f) + " does not exist");
    in_patch.emplace(f, 0);
  }
  {
    std::deque<FaceId> queue{faces[0]};
    in_patch[faces[0]] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
      const FaceId f = queue.front();
      queue.pop_front();
      for (FaceId g : surface.face_neighbors(f)) {
        auto it = in_patch.find(g);
        if (it != in_patch.end() && !it->second) {
          it->second = 1;
          ++reached;
          queue.push_back(g);
        }
      }
    }
    if (reached != in_patch.size())
      throw Error(ErrorCode::SingularSystem, "patch faces are not connected");
  }

  // Local vertex numbering.
  std::unordered_map<VertexId, int> local;
  std::vector<VertexId> global;
  for (FaceId f : faces)
    for (VertexId v : surface.face_vertices(f))
      if (local.emplace(v, static_cast<int>(global.size())).second) global.push_back(v);
  const int n = static_cast<int>(global.size());

  const FaceId seed = faces[0];
  const Triangle seed_tri = surface.face_vertices(seed);
  const Vec3 seed_t = field.vectors[seed];
  const Vec3 seed_b = surface.face_normal(seed).cross(seed_t);
  const Vec3 seed_edge = surface.position(seed_tri[1]) - surface.position(seed_tri[0]);
  const int pin0 = local.at(seed_tri[0]), pin1 = local.at(seed_tri[1]);
  const Vec2 pin1_uv(seed_edge.dot(seed_t), seed_edge.dot(seed_b));

  // E = sum_f A_f (|grad u - t_f|^2 + |grad v - b_f|^2)
  std::vector<Eigen::Triplet<double>> entries;
  Eigen::VectorXd rhs_u = Eigen::VectorXd::Zero(n), rhs_v = Eigen::VectorXd::Zero(n);
  std::unordered_map<FaceId, bool> done;
  for (FaceId f : faces) {
    if (!done.emplace(f, true).second) continue;
    const Triangle tri = surface.face_vertices(f);
    const Vec3 an = surface.face_area_normal(f);
    const double area = 0.5 * an.norm();
    if (!(area > 1e-300))
      throw Error(ErrorCode::SingularSystem, "face " + std::to_string(f) + " is degenerate");
    const Vec3 nrm = an.normalized();
    const Vec3 t = field.vectors[f];
    const Vec3 b = nrm.cross(t);
    std::array<Vec3, 3> grad;
    for (int i = 0; i < 3; ++i) {
      const Vec3 e = surface.position(tri[(i + 2) % 3]) - surface.position(tri[(i + 1) % 3]);
      grad[i] = nrm.cross(e) / (2.0 * area);
    }
    for (int i = 0; i < 3; ++i) {
      const int li = local.at(tri[i]);
      rhs_u[li] += area * grad[i].dot(t);
      rhs_v[li] += area * grad[i].dot(b);
      for (int j = 0; j < 3; ++j)
        entries.emplace_back(li, local.at(tri[j]), area * grad[i].dot(grad[j]));
    }
  }
  Eigen::SparseMatrix<double> k(n, n);
  k.setFromTriplets(entries.begin(), entries.end());

  // Eliminate the pinned vertices.
  std::vector<int> free_index(n, -1);
  int nfree = 0;
  for (int i = 0; i < n; ++i)
    if (i != pin0 && i != pin1) free_index[i] = nfree++;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n), v = Eigen::VectorXd::Zero(n);
  u[pin1] = pin1_uv.x();
  v[pin1] = pin1_uv.y();

  if (nfree > 0) {
    std::vector<Eigen::Triplet<double>> reduced;
    Eigen::VectorXd bu(nfree), bv(nfree);
    for (int i = 0; i < n; ++i)
      if (free_index[i] >= 0) {
        bu[free_index[i]] = rhs_u[i];
        bv[free_index[i]] = rhs_v[i];
      }
    for (int col = 0; col < k.outerSize(); ++col)
      for (Eigen::SparseMatrix<double>::InnerIterator it(k, col); it; ++it) {
        const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
        if (free_index[r] < 0) continue;
        if (free_index[c] >= 0) {
          reduced.emplace_back(free_index[r], free_index[c], it.value());
        } else {
          bu[free_index[r]] -= it.value() * u[c];
          bv[free_index[r]] -= it.value() * v[c];
        }
      }
    Eigen::SparseMatrix<double> kf(nfree, nfree);
    kf.setFromTriplets(reduced.begin(), reduced.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(kf);
    if (solver.info() != Eigen::Success)
      throw Error(ErrorCode::SingularSystem, "patch system could not be factored");
    const Eigen::VectorXd dvec = solver.vectorD();
    const double dmin = dvec.minCoeff(), dmax = dvec.maxCoeff();
    if (!(dmin > 0.0)) throw Error(ErrorCode::SingularSystem, "patch system is not positive definite");
    if (dmax / dmin > 1e10)
      log::warn("patch at face " + std::to_string(seed) + " is ill-conditioned (estimate " +
                std::to_string(dmax / dmin) + ")");
    const Eigen::VectorXd xu = solver.solve(bu), xv = solver.solve(bv);
    if (!xu.allFinite() || !xv.allFinite())
      throw Error(ErrorCode::SingularSystem, "patch solve produced non-finite values");
    for (int i = 0; i < n; ++i)
      if (free_index[i] >= 0) {
        u[i] = xu[free_index[i]];
        v[i] = xv[free_index[i]];
      }
  }

  Patch patch;
  patch.seed = seed;
  patch.faces.assign(faces.begin(), faces.end());
  patch.uvs.reserve(faces.size());
  for (FaceId f : faces) {
    const Triangle tri = surface.face_vertices(f);
    std::array<Vec2, 3> uv;
    for (int i = 0; i < 3; ++i) {
      const int li = local.at(tri[i]);
      uv[i] = Vec2(u[li], v[li]);
    }
    patch.uvs.push_back(uv);
  }
  return patch;
}

std::vector<Patch> cover_surface(const Surface& surface, const TangentField& field, double radius) {
  std::vector<char> covered(surface.face_count(), 0);
  std::vector<Patch> patches;
  for (FaceId f = 0; f < static_cast<FaceId>(surface.face_count()); ++f) {
    if (covered[f]) continue;
    const std::vector<FaceId> faces = grow_patch(surface, field, f, radius);
    patches.push_back(parameterize_patch(surface, faces, field));
    for (FaceId g : faces) covered[g] = 1;
  }
  return patches;
}

}  // namespace npr
