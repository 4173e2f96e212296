#include "npr/contours.hpp"

#include <algorithm>

namespace npr {
namespace {

void check_curvature(const CurvatureField& c, std::size_t n) {
  if (c.k1.size() != n || c.k2.size() != n || c.e1.size() != n || c.e2.size() != n)
    throw Error(ErrorCode::MissingCurvature, "curvature field is missing or does not match the mesh");
}

void check_state(const Surface& surface, const MeshState& state) {
  if (state.positions.size() != surface.vertex_count() ||
      state.normals.size() != surface.vertex_count())
    throw Error(ErrorCode::IndexOutOfRange, "mesh state does not match the surface");
}

bool positive(double f) { return f >= 0.0; }

}  // namespace

std::size_t ContourSet::point_count() const {
  std::size_t n = 0;
  for (const auto& p : polylines) n += p.points.size();
  return n;
}

ScalarField silhouette_field(const MeshState& state, const Camera& camera) {
  ScalarField g(state.positions.size());
  const Vec3 dir = -camera.forward();
  for (std::size_t v = 0; v < g.size(); ++v) {
    const Vec3& n = state.normals[v];
    g[v] = camera.orthographic() ? n.dot(dir) : n.dot(camera.eye - state.positions[v]);
  }
  return g;
}

ScalarField radial_curvature_field(const Surface& surface, const MeshState& state,
                                   const CurvatureField& curvature, const Camera& camera) {
  check_state(surface, state);
  check_curvature(curvature, state.positions.size());
  const double eps = 1e-9 * compute_feature_size(surface, state.positions);
  ScalarField kr(state.positions.size());
  for (std::size_t v = 0; v < kr.size(); ++v) {
    const Vec3& n = state.normals[v];
    const Vec3 view = camera.view_vector(state.positions[v]);
    const Vec3 w = view - view.dot(n) * n;
    const double w2 = w.squaredNorm();
    if (std::sqrt(w2) < eps) {
      kr[v] = curvature.k1[v];
      continue;
    }
    const double u = w.dot(curvature.e1[v]), s = w.dot(curvature.e2[v]);
    kr[v] = (curvature.k1[v] * u * u + curvature.k2[v] * s * s) / w2;
  }
  return kr;
}

// With v the unit view vector, (u, v) = (v.e1, v.e2) and s^2 = u^2 + v^2
// (so s = sin of the angle between view and normal):
//
//   D = C(w, w, w) / s^2 - 2 (n.v) (II(w, w_perp) / s^2)^2
//
// where C(w, w, w) = a u^3 + 3 b u^2 v + 3 c u v^2 + d v^3 uses the
// (a, b, c, d) layout of CurvatureField, and II(w, w_perp) = (k2 - k1) u v.
ScalarField radial_curvature_derivative_field(const MeshState& state,
                                              const CurvatureField& curvature,
                                              const Camera& camera) {
  const std::size_t n = state.positions.size();
  check_curvature(curvature, n);
  if (!curvature.has_derivative || curvature.dcurv.size() != n)
    throw Error(ErrorCode::MissingCurvature, "curvature derivative has not been estimated");
  ScalarField d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 view = camera.view_vector(state.positions[i]).normalized();
    const double ndotv = state.normals[i].dot(view);
    const double u = view.dot(curvature.e1[i]), v = view.dot(curvature.e2[i]);
    const double s2 = u * u + v * v;
    if (s2 < 1e-24) {
      d[i] = 0.0;
      continue;
    }
    const auto& c = curvature.dcurv[i];
    const double cwww = u * u * (u * c[0] + 3.0 * v * c[1]) + v * v * (3.0 * u * c[2] + v * c[3]);
    const double tr = (curvature.k2[i] - curvature.k1[i]) * u * v / s2;
    d[i] = cwww / s2 - 2.0 * ndotv * tr * tr;
  }
  return d;
}

ContourSet extract_isocurves(const Surface& surface, const MeshState& state,
                             std::span<const double> field, const PointAttributes& attributes) {
  check_state(surface, state);
  if (field.size() != surface.vertex_count())
    throw Error(ErrorCode::FieldLengthMismatch,
                "field has " + std::to_string(field.size()) + " values for " +
                    std::to_string(surface.vertex_count()) + " vertices");
  if (!attributes.strength.empty() && attributes.strength.size() != surface.vertex_count())
    throw Error(ErrorCode::FieldLengthMismatch, "strength field length does not match the mesh");

  const auto& pos = state.positions;
  const auto& nrm = state.normals;
  const std::size_t ne = surface.edge_count();

  ContourSet out;
  out.has_ndotv = attributes.camera != nullptr;
  out.has_strength = !attributes.strength.empty();
  if (attributes.camera) out.camera = *attributes.camera;

  std::vector<ContourPoint> points(ne);
  std::vector<char> crossing(ne, 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(ne); ++e) {
    const auto [a, b] = surface.edge_vertices(e);
    if (positive(field[a]) == positive(field[b])) continue;
    crossing[e] = 1;
    out.crossing_edges.push_back(e);
    ContourPoint& p = points[e];
    p.edge = e;
    p.t = field[a] / (field[a] - field[b]);
    p.position = pos[a] + p.t * (pos[b] - pos[a]);
    p.normal = normalized_or(nrm[a] + p.t * (nrm[b] - nrm[a]), nrm[a]);
    if (attributes.camera)
      p.ndotv = p.normal.dot(attributes.camera->view_vector(p.position).normalized());
    if (out.has_strength)
      p.strength = attributes.strength[a] + p.t * (attributes.strength[b] - attributes.strength[a]);
  }

  // One directed segment per crossed face, positive side on the left.
  std::vector<EdgeId> next(ne, kInvalid);
  std::vector<char> has_incoming(ne, 0);
  for (FaceId f = 0; f < static_cast<FaceId>(surface.face_count()); ++f) {
    std::array<EdgeId, 3> side;  // side[i] joins corner i and corner i+1
    std::array<bool, 3> sgn;
    HalfedgeId h = surface.face_halfedge(f);
    for (int i = 0; i < 3; ++i) {
      side[i] = surface.halfedge_edge(h);
      sgn[i] = positive(field[surface.halfedge(h).origin]);
      h = surface.halfedge(h).next;
    }
    const int npos = sgn[0] + sgn[1] + sgn[2];
    if (npos == 0 || npos == 3) continue;
    const bool lone_value = npos == 1;
    int lone = 0;
    while (sgn[lone] != lone_value) ++lone;
    EdgeId from = side[lone], to = side[(lone + 2) % 3];
    if (!lone_value) std::swap(from, to);
    next[from] = to;
    has_incoming[to] = 1;
  }

  std::vector<char> visited(ne, 0);
  auto follow = [&](EdgeId start) {
    Polyline line;
    EdgeId cur = start;
    while (cur != kInvalid && !visited[cur]) {
      visited[cur] = 1;
      line.points.push_back(points[cur]);
      cur = next[cur];
    }
    line.closed = cur == start;
    return line;
  };

  std::vector<Polyline> raw;
  for (EdgeId e : out.crossing_edges)
    if (!has_incoming[e] && !visited[e]) raw.push_back(follow(e));
  for (EdgeId e : out.crossing_edges)
    if (!visited[e]) raw.push_back(follow(e));

  // Exact zeros put several crossings on one vertex; merge repeated points.
  for (Polyline& line : raw) {
    std::vector<ContourPoint> pts;
    for (const ContourPoint& p : line.points)
      if (pts.empty() || (p.position - pts.back().position).norm() > 1e-12) pts.push_back(p);
    if (line.closed)
      while (pts.size() > 1 && (pts.back().position - pts.front().position).norm() <= 1e-12)
        pts.pop_back();
    if (pts.size() < 2) continue;
    line.points = std::move(pts);
    if (line.points.size() < 3) line.closed = false;
    out.polylines.push_back(std::move(line));
  }
  return out;
}

ContourSet trim_suggestive(const ContourSet& contours, const SuggestiveThresholds& thresholds,
                           double feature_size) {
  if (!contours.has_ndotv || !contours.has_strength)
    throw Error(ErrorCode::MissingAttributes, "contours lack n.v or derivative strength attributes");
  if (!(feature_size > 0.0))
    throw Error(ErrorCode::InvalidConfig, "feature size must be positive");
  const double min_ndotv = std::sin(deg_to_rad(thresholds.angle_deg));
  auto keep = [&](const ContourPoint& p) {
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - p.ndotv * p.ndotv));
    return std::abs(p.ndotv) >= min_ndotv &&
           p.strength > thresholds.derivative * sin_theta / feature_size;
  };

  ContourSet out = contours;
  out.polylines.clear();
  for (const Polyline& line : contours.polylines) {
    const std::size_t n = line.points.size();
    std::vector<char> ok(n);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < n; ++i) kept += ok[i] = keep(line.points[i]);
    if (kept == n) {
      out.polylines.push_back(line);
      continue;
    }
    // Closed lines are unrolled to start just after a dropped point.
    std::size_t start = 0;
    if (line.closed) {
      while (ok[start]) ++start;
      start = (start + 1) % n;
    }
    Polyline piece;
    auto flush = [&]() {
      if (piece.points.size() >= 2) out.polylines.push_back(piece);
      piece.points.clear();
    };
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = (start + k) % n;
      if (ok[i]) {
        piece.points.push_back(line.points[i]);
      } else {
        flush();
      }
    }
    flush();
  }
  return out;
}

ContourSet extract_contour(const ContourDefinition& definition, const ContourInputs& inputs) {
  if (definition.needs_curvature && inputs.curvature == nullptr)
    throw Error(ErrorCode::MissingCurvature, "contour '" + definition.name + "' needs curvature");
  const ScalarField field = definition.field(inputs);
  ScalarField strength;
  if (definition.strength) strength = definition.strength(inputs);
  PointAttributes attrs;
  attrs.camera = &inputs.camera;
  attrs.strength = strength;
  ContourSet set = extract_isocurves(inputs.surface, inputs.state, field, attrs);
  if (definition.filter) set = definition.filter(set, inputs);
  set.name = definition.name;
  return set;
}

ContourDefinition silhouette_definition() {
  ContourDefinition d;
  d.name = "silhouette";
  d.field = [](const ContourInputs& in) { return silhouette_field(in.state, in.camera); };
  return d;
}

ContourDefinition suggestive_definition(const SuggestiveThresholds& thresholds) {
  ContourDefinition d;
  d.name = "suggestive";
  d.needs_curvature = true;
  d.field = [](const ContourInputs& in) {
    return radial_curvature_field(in.surface, in.state, *in.curvature, in.camera);
  };
  d.strength = [](const ContourInputs& in) {
    return radial_curvature_derivative_field(in.state, *in.curvature, in.camera);
  };
  d.filter = [thresholds](const ContourSet& set, const ContourInputs& in) {
    return trim_suggestive(set, thresholds, compute_feature_size(in.surface, in.state.positions));
  };
  return d;
}

ContourSet extract_silhouettes(const Surface& surface, const MeshState& state, const Camera& camera) {
  return extract_contour(silhouette_definition(), {surface, state, nullptr, camera});
}

ContourSet extract_suggestive(const Surface& surface, const MeshState& state,
                              const CurvatureField& curvature, const Camera& camera,
                              const SuggestiveThresholds& thresholds) {
  return extract_contour(suggestive_definition(thresholds), {surface, state, &curvature, camera});
}

}  // namespace npr
