#include "npr/curvature.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "npr/log.hpp"

namespace npr {
namespace {

constexpr double kMaxCondition = 1e8;

// Minimal rotation taking unit normal `from` onto unit normal `to`, applied to x.
Vec3 transport(const Vec3& x, const Vec3& from, const Vec3& to) {
  const double c = from.dot(to);
  if (c < -0.999999) {
    const Vec3 axis = any_perpendicular(from);
    return 2.0 * axis.dot(x) * axis - x;
  }
  const Vec3 k = from.cross(to);
  return x * c + k.cross(x) + k * (k.dot(x) / (1.0 + c));
}

// Symmetric 2x2x2 tensor with coefficients (a,b,c,d) evaluated on vectors
// given by their 2D coordinates in the tensor's frame.
double eval_sym3(const std::array<double, 4>& t, const Vec2& x, const Vec2& y, const Vec2& z) {
  auto coef = [&](int i, int j, int k) { return t[i + j + k]; };
  double s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) s += coef(i, j, k) * x[i] * y[j] * z[k];
  return s;
}

template <int N>
bool solve_normal_equations(const Eigen::Matrix<double, N, N>& w,
                            const Eigen::Matrix<double, N, 1>& m,
                            Eigen::Matrix<double, N, 1>& x) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, N, N>> es(w, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0), hi = es.eigenvalues()(N - 1);
  if (!(lo > 0.0) || hi / lo > kMaxCondition) return false;
  x = w.ldlt().solve(m);
  return x.allFinite();
}

struct FaceFrame {
  std::array<Vec3, 3> edge;  // edge[j] runs from corner j+1 to corner j+2
  Vec3 t, b, n;
  double area = 0.0;
};

FaceFrame face_frame(const Surface& surface, std::span<const Vec3> pos, FaceId f) {
  const Triangle tri = surface.face_vertices(f);
  FaceFrame fr;
  for (int j = 0; j < 3; ++j) fr.edge[j] = pos[tri[(j + 2) % 3]] - pos[tri[(j + 1) % 3]];
  const Vec3 cross = fr.edge[0].cross(fr.edge[1]);
  fr.area = 0.5 * cross.norm();
  if (fr.area > 0.0) {
    fr.t = fr.edge[0].normalized();
    fr.n = cross.normalized();
    fr.b = fr.n.cross(fr.t);
  }
  return fr;
}

// Rotates the vertex frame (u, v) with normal nv into the face plane and
// returns its coordinates in the face frame.
std::pair<Vec2, Vec2> vertex_axes_in_face(const FaceFrame& fr, const Vec3& u, const Vec3& v,
                                          const Vec3& nv) {
  const Vec3 ru = transport(u, nv, fr.n);
  const Vec3 rv = transport(v, nv, fr.n);
  return {Vec2(ru.dot(fr.t), ru.dot(fr.b)), Vec2(rv.dot(fr.t), rv.dot(fr.b))};
}

void check_state(const Surface& surface, const MeshState& state) {
  if (state.positions.size() != surface.vertex_count() ||
      state.normals.size() != surface.vertex_count())
    throw Error(ErrorCode::IndexOutOfRange, "mesh state does not match the surface");
}

// Per-corner weights: corner area over the vertex's total area.
std::vector<std::array<double, 3>> corner_weights(const Surface& surface,
                                                  std::span<const Vec3> pos) {
  auto areas = corner_areas(surface, pos);
  std::vector<double> total(surface.vertex_count(), 0.0);
  for (FaceId f = 0; f < static_cast<FaceId>(surface.face_count()); ++f) {
    const Triangle tri = surface.face_vertices(f);
    for (int i = 0; i < 3; ++i) total[tri[i]] += areas[f][i];
  }
  for (FaceId f = 0; f < static_cast<FaceId>(surface.face_count()); ++f) {
    const Triangle tri = surface.face_vertices(f);
    for (int i = 0; i < 3; ++i) areas[f][i] = total[tri[i]] > 0.0 ? areas[f][i] / total[tri[i]] : 0.0;
  }
  return areas;
}

}  // namespace

PrincipalFrame diagonalize_second_form(const SecondForm2x2& m, const Vec3& axis_u,
                                       const Vec3& axis_v) {
  const double mean = 0.5 * (m.e + m.g);
  const double half_diff = 0.5 * (m.e - m.g);
  const double radius = std::hypot(half_diff, m.f);
  PrincipalFrame out;
  out.k1 = mean + radius;
  out.k2 = mean - radius;
  const double theta = (out.k1 - out.k2 < 1e-12) ? 0.0 : 0.5 * std::atan2(2.0 * m.f, m.e - m.g);
  const double c = std::cos(theta), s = std::sin(theta);
  out.e1 = c * axis_u + s * axis_v;
  out.e2 = -s * axis_u + c * axis_v;
  return out;
}

std::vector<std::array<double, 3>> corner_areas(const Surface& surface,
                                                std::span<const Vec3> pos) {
  std::vector<std::array<double, 3>> out(surface.face_count(), {0.0, 0.0, 0.0});
  for (FaceId f = 0; f < static_cast<FaceId>(surface.face_count()); ++f) {
    const Triangle tri = surface.face_vertices(f);
    // e[i] is the edge opposite corner i.
    const std::array<Vec3, 3> e = {pos[tri[2]] - pos[tri[1]], pos[tri[0]] - pos[tri[2]],
                                   pos[tri[1]] - pos[tri[0]]};
    const double area = 0.5 * e[0].cross(e[1]).norm();
    if (!(area > 0.0)) continue;
    const std::array<double, 3> l2 = {e[0].squaredNorm(), e[1].squaredNorm(), e[2].squaredNorm()};
    const std::array<double, 3> ew = {l2[0] * (l2[1] + l2[2] - l2[0]),
                                      l2[1] * (l2[2] + l2[0] - l2[1]),
                                      l2[2] * (l2[0] + l2[1] - l2[2])};
    auto& ca = out[f];
    bool obtuse = false;
    for (int i = 0; i < 3 && !obtuse; ++i) {
      if (ew[i] > 0.0) continue;
      // Corner i is obtuse (or right): split along the perpendicular bisectors.
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      ca[j] = -0.25 * l2[k] * area / e[i].dot(e[k]);
      ca[k] = -0.25 * l2[j] * area / e[i].dot(e[j]);
      ca[i] = area - ca[j] - ca[k];
      obtuse = true;
    }
    if (!obtuse) {
      const double scale = 0.5 * area / (ew[0] + ew[1] + ew[2]);
      for (int i = 0; i < 3; ++i) ca[i] = scale * (ew[(i + 1) % 3] + ew[(i + 2) % 3]);
    }
  }
  return out;
}

CurvatureField estimate_curvature(const Surface& surface, const MeshState& state) {
  check_state(surface, state);
  const std::size_t nv = surface.vertex_count();
  const auto& pos = state.positions;
  const auto& nrm = state.normals;

  // Initial per-vertex tangent frames.
  std::vector<Vec3> fu(nv), fv(nv);
  for (VertexId v = 0; v < static_cast<VertexId>(nv); ++v) {
    const Vec3& n = nrm[v];
    Vec3 u = Vec3::Zero();
    if (const HalfedgeId h = surface.vertex_halfedge(v); h != kInvalid) {
      const Vec3 d = pos[surface.destination(h)] - pos[v];
      u = d - d.dot(n) * n;
    }
    fu[v] = normalized_or(u, any_perpendicular(n), 1e-300);
    fv[v] = n.cross(fu[v]);
  }

  const auto weights = corner_weights(surface, pos);
  std::vector<SecondForm2x2> acc(nv);
  std::size_t skipped = 0;

  for (FaceId f = 0; f < static_cast<FaceId>(surface.face_count()); ++f) {
    const FaceFrame fr = face_frame(surface, pos, f);
    if (!(fr.area > 0.0)) {
      ++skipped;
      continue;
    }
    const Triangle tri = surface.face_vertices(f);
    // Least squares II * e_j = dn_j, unknowns (e, f, g) in the face frame.
    Eigen::Matrix3d w = Eigen::Matrix3d::Zero();
    Eigen::Vector3d m = Eigen::Vector3d::Zero();
    for (int j = 0; j < 3; ++j) {
      const double u = fr.edge[j].dot(fr.t), v = fr.edge[j].dot(fr.b);
      w(0, 0) += u * u;
      w(0, 1) += u * v;
      w(2, 2) += v * v;
      const Vec3 dn = nrm[tri[(j + 2) % 3]] - nrm[tri[(j + 1) % 3]];
      const double dnu = dn.dot(fr.t), dnv = dn.dot(fr.b);
      m(0) += dnu * u;
      m(1) += dnu * v + dnv * u;
      m(2) += dnv * v;
    }
    w(1, 1) = w(0, 0) + w(2, 2);
    w(1, 2) = w(0, 1);
    w(1, 0) = w(0, 1);
    w(2, 1) = w(1, 2);
    Eigen::Vector3d x;
    if (!solve_normal_equations<3>(w, m, x)) {
      ++skipped;
      continue;
    }
    for (int i = 0; i < 3; ++i) {
      const VertexId vi = tri[i];
      const auto [a1, a2] = vertex_axes_in_face(fr, fu[vi], fv[vi], nrm[vi]);
      auto quad = [&](const Vec2& p, const Vec2& q) {
        return x(0) * p.x() * q.x() + x(1) * (p.x() * q.y() + p.y() * q.x()) + x(2) * p.y() * q.y();
      };
      const double wgt = weights[f][i];
      acc[vi].e += wgt * quad(a1, a1);
      acc[vi].f += wgt * quad(a1, a2);
      acc[vi].g += wgt * quad(a2, a2);
    }
  }
  if (skipped > 0)
    log::warn("curvature: skipped " + std::to_string(skipped) + " degenerate or ill-conditioned face(s)");

  CurvatureField out;
  out.time = state.time;
  out.k1.resize(nv);
  out.k2.resize(nv);
  out.e1.resize(nv);
  out.e2.resize(nv);
  out.dcurv.assign(nv, {0.0, 0.0, 0.0, 0.0});
  for (std::size_t v = 0; v < nv; ++v) {
    const PrincipalFrame p = diagonalize_second_form(acc[v], fu[v], fv[v]);
    out.k1[v] = p.k1;
    out.k2[v] = p.k2;
    out.e1[v] = p.e1;
    out.e2[v] = p.e2;
  }
  return out;
}

CurvatureField estimate_curvature(Surface& surface) {
  CurvatureField field = estimate_curvature(surface, static_state(surface));
  store_curvature(surface, field);
  return field;
}

void estimate_curvature_derivative(const Surface& surface, const MeshState& state,
                                   CurvatureField& field) {
  check_state(surface, state);
  const std::size_t nv = surface.vertex_count();
  if (field.k1.size() != nv || field.k2.size() != nv || field.e1.size() != nv ||
      field.e2.size() != nv)
    throw Error(ErrorCode::MissingCurvature, "curvature must be estimated before its derivative");
  const auto& pos = state.positions;
  const auto& nrm = state.normals;
  const auto weights = corner_weights(surface, pos);

  std::vector<std::array<double, 4>> acc(nv, {0.0, 0.0, 0.0, 0.0});
  std::size_t skipped = 0;
  for (FaceId f = 0; f < static_cast<FaceId>(surface.face_count()); ++f) {
    const FaceFrame fr = face_frame(surface, pos, f);
    if (!(fr.area > 0.0)) {
      ++skipped;
      continue;
    }
    const Triangle tri = surface.face_vertices(f);

    // Each corner's curvature tensor expressed in the face frame.
    std::array<Eigen::Vector3d, 3> fc;
    for (int i = 0; i < 3; ++i) {
      const VertexId vi = tri[i];
      const Vec3 rt = transport(fr.t, fr.n, nrm[vi]);
      const Vec3 rb = transport(fr.b, fr.n, nrm[vi]);
      const double u1 = rt.dot(field.e1[vi]), v1 = rt.dot(field.e2[vi]);
      const double u2 = rb.dot(field.e1[vi]), v2 = rb.dot(field.e2[vi]);
      const double k1 = field.k1[vi], k2 = field.k2[vi];
      fc[i] = {k1 * u1 * u1 + k2 * v1 * v1, k1 * u1 * u2 + k2 * v1 * v2, k1 * u2 * u2 + k2 * v2 * v2};
    }

    // Least squares: the change of (ku, kuv, kv) along each edge (u, v) is
    // (a u + b v, b u + c v, c u + d v). The off-diagonal row counts twice.
    Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
    Eigen::Vector4d m = Eigen::Vector4d::Zero();
    for (int j = 0; j < 3; ++j) {
      const double u = fr.edge[j].dot(fr.t), v = fr.edge[j].dot(fr.b);
      const Eigen::Vector3d d = fc[(j + 2) % 3] - fc[(j + 1) % 3];
      Eigen::Matrix<double, 3, 4> a;
      a << u, v, 0, 0,
           0, u, v, 0,
           0, 0, u, v;
      const Eigen::Vector3d rw(1.0, 2.0, 1.0);
      w += a.transpose() * rw.asDiagonal() * a;
      m += a.transpose() * rw.asDiagonal() * d;
    }
    Eigen::Vector4d x;
    if (!solve_normal_equations<4>(w, m, x)) {
      ++skipped;
      continue;
    }
    const std::array<double, 4> ct = {x(0), x(1), x(2), x(3)};
    for (int i = 0; i < 3; ++i) {
      const VertexId vi = tri[i];
      const auto [p, q] = vertex_axes_in_face(fr, field.e1[vi], field.e2[vi], nrm[vi]);
      const double wgt = weights[f][i];
      acc[vi][0] += wgt * eval_sym3(ct, p, p, p);
      acc[vi][1] += wgt * eval_sym3(ct, p, p, q);
      acc[vi][2] += wgt * eval_sym3(ct, p, q, q);
      acc[vi][3] += wgt * eval_sym3(ct, q, q, q);
    }
  }
  if (skipped > 0)
    log::warn("curvature derivative: skipped " + std::to_string(skipped) +
              " degenerate or ill-conditioned face(s)");
  field.dcurv = std::move(acc);
  field.has_derivative = true;
}

void estimate_curvature_derivative(Surface& surface, CurvatureField& field) {
  estimate_curvature_derivative(surface, static_state(surface), field);
  store_curvature(surface, field);
}

void store_curvature(Surface& surface, const CurvatureField& field) {
  if (field.size() != surface.vertex_count())
    throw Error(ErrorCode::MissingCurvature, "curvature field does not match the surface");
  auto column = [&](const char* name, auto value) {
    using T = decltype(value);
    if (surface.has_property(ElementKind::Vertex, name))
      surface.remove_property(ElementKind::Vertex, name);
    return surface.add_property<T>(ElementKind::Vertex, name);
  };
  auto hk1 = column(kPropK1, 0.0);
  auto hk2 = column(kPropK2, 0.0);
  auto he1 = column(kPropE1, Vec3());
  auto he2 = column(kPropE2, Vec3());
  surface.properties().values(hk1) = field.k1;
  surface.properties().values(hk2) = field.k2;
  surface.properties().values(he1) = field.e1;
  surface.properties().values(he2) = field.e2;
  if (surface.has_property(ElementKind::Vertex, kPropDcurv))
    surface.remove_property(ElementKind::Vertex, kPropDcurv);
  if (field.has_derivative) {
    auto hd = surface.add_property<std::array<double, 4>>(ElementKind::Vertex, kPropDcurv);
    surface.properties().values(hd) = field.dcurv;
  }
}

CurvatureField load_curvature(const Surface& surface) {
  if (!surface.has_property(ElementKind::Vertex, kPropK1))
    throw Error(ErrorCode::MissingCurvature, "surface has no curvature properties");
  const auto& props = surface.properties();
  CurvatureField field;
  field.k1 = props.values(surface.property<double>(ElementKind::Vertex, kPropK1));
  field.k2 = props.values(surface.property<double>(ElementKind::Vertex, kPropK2));
  field.e1 = props.values(surface.property<Vec3>(ElementKind::Vertex, kPropE1));
  field.e2 = props.values(surface.property<Vec3>(ElementKind::Vertex, kPropE2));
  if (surface.has_property(ElementKind::Vertex, kPropDcurv)) {
    field.dcurv = props.values(surface.property<std::array<double, 4>>(ElementKind::Vertex, kPropDcurv));
    field.has_derivative = true;
  } else {
    field.dcurv.assign(field.k1.size(), {0.0, 0.0, 0.0, 0.0});
  }
  return field;
}

}  // namespace npr
