#include "npr/animation.hpp"

#include <algorithm>
#include <cmath>

#include "npr/spline.hpp"

namespace npr {

MeshState static_state(const Surface& surface) {
  return {surface.positions(), surface.normals(), 0.0};
}

void VertexAnimatedSurface::validate() const {
  const std::size_t nv = surface.vertex_count();
  for (const auto& k : keyframes)
    if (k.positions.size() != nv || k.normals.size() != nv)
      throw Error(ErrorCode::IndexOutOfRange,
                  "keyframe '" + k.name + "' vertex count differs from the surface");
  for (const auto& [name, r] : animations)
    if (r.count <= 0 || r.first < 0 || r.first + r.count > static_cast<int>(keyframes.size()))
      throw Error(ErrorCode::IndexOutOfRange, "animation '" + name + "' has an invalid range");
}

const FrameRange& VertexAnimatedSurface::animation(std::string_view name) const {
  auto it = animations.find(std::string(name));
  if (it == animations.end())
    throw Error(ErrorCode::UnknownAnimation, "no animation '" + std::string(name) + "'");
  return it->second;
}

MeshState interpolate_keyframes(const VertexAnimatedSurface& surface, std::string_view animation,
                                double t) {
  const FrameRange& range = surface.animation(animation);
  const double last = static_cast<double>(range.count - 1);
  if (!(t >= 0.0 && t <= last))
    throw Error(ErrorCode::TimeOutOfRange, "t=" + std::to_string(t) + " outside [0, " +
                                               std::to_string(range.count - 1) + "]");

  int i = static_cast<int>(std::floor(t));
  double u = t - i;
  if (i >= range.count - 1) {
    i = range.count - 1;
    u = 0.0;
  }
  auto frame = [&](int k) -> const Keyframe& {
    return surface.keyframes[range.first + std::clamp(k, 0, range.count - 1)];
  };

  MeshState state;
  state.time = t;
  const Keyframe& k1 = frame(i);
  if (u == 0.0) {
    state.positions = k1.positions;
    state.normals = k1.normals;
    return state;
  }

  const Keyframe& k2 = frame(i + 1);
  const std::size_t nv = k1.positions.size();
  state.positions.resize(nv);
  state.normals.resize(nv);
  if (surface.interpolation == Interpolation::Linear) {
    for (std::size_t v = 0; v < nv; ++v) {
      state.positions[v] = (1.0 - u) * k1.positions[v] + u * k2.positions[v];
      state.normals[v] = (1.0 - u) * k1.normals[v] + u * k2.normals[v];
    }
  } else {
    const Keyframe& k0 = frame(i - 1);
    const Keyframe& k3 = frame(i + 2);
    for (std::size_t v = 0; v < nv; ++v) {
      state.positions[v] =
          catmull_rom(k0.positions[v], k1.positions[v], k2.positions[v], k3.positions[v], u);
      state.normals[v] =
          catmull_rom(k0.normals[v], k1.normals[v], k2.normals[v], k3.normals[v], u);
    }
  }
  for (std::size_t v = 0; v < nv; ++v) {
    const double len = state.normals[v].norm();
    state.normals[v] = len > 1e-12 ? Vec3(state.normals[v] / len) : k1.normals[v];
  }
  return state;
}

std::vector<Rigid> Skeleton::bind_globals() const {
  std::vector<Rigid> g(bones.size());
  for (std::size_t b = 0; b < bones.size(); ++b) {
    const Bone& bone = bones[b];
    g[b] = bone.parent == kInvalid ? bone.bind_local : g[bone.parent] * bone.bind_local;
  }
  return g;
}

void Skeleton::validate() const {
  for (std::size_t b = 0; b < bones.size(); ++b) {
    const int p = bones[b].parent;
    if (p != kInvalid && (p < 0 || p >= static_cast<int>(b)))
      throw Error(ErrorCode::CyclicSkeleton,
                  "bone " + std::to_string(b) + " does not follow its parent " + std::to_string(p));
  }
}

double SkeletalAnimation::start_time() const {
  double t = 0.0;
  bool any = false;
  for (const auto& track : tracks)
    if (!track.keys.empty()) {
      t = any ? std::min(t, track.keys.front().time) : track.keys.front().time;
      any = true;
    }
  return t;
}

double SkeletalAnimation::end_time() const {
  double t = 0.0;
  bool any = false;
  for (const auto& track : tracks)
    if (!track.keys.empty()) {
      t = any ? std::max(t, track.keys.back().time) : track.keys.back().time;
      any = true;
    }
  return t;
}

void SkinnedSurface::validate() const {
  skeleton.validate();
  if (weights.size() != surface.vertex_count())
    throw Error(ErrorCode::BadWeight, "weight list count differs from vertex count");
  for (std::size_t v = 0; v < weights.size(); ++v) {
    double sum = 0.0;
    for (const auto& w : weights[v]) {
      if (w.bone < 0 || w.bone >= static_cast<int>(skeleton.size()))
        throw Error(ErrorCode::BadWeight, "vertex " + std::to_string(v) + " references bone " +
                                              std::to_string(w.bone));
      if (w.weight < 0.0) throw Error(ErrorCode::BadWeight, "negative weight");
      sum += w.weight;
    }
    if (std::abs(sum - 1.0) > 1e-6)
      throw Error(ErrorCode::BadWeight, "weights of vertex " + std::to_string(v) + " sum to " +
                                            std::to_string(sum));
  }
  for (const auto& anim : animations)
    for (const auto& track : anim.tracks)
      if (track.bone < 0 || track.bone >= static_cast<int>(skeleton.size()))
        throw Error(ErrorCode::BadPose, "track references bone " + std::to_string(track.bone));
}

const SkeletalAnimation& SkinnedSurface::animation(std::string_view name) const {
  for (const auto& a : animations)
    if (a.name == name) return a;
  throw Error(ErrorCode::UnknownAnimation, "no animation '" + std::string(name) + "'");
}

Quat slerp(const Quat& a, const Quat& b_in, double u) {
  Quat b = b_in;
  double dot = a.dot(b);
  if (dot < 0.0) {
    b.coeffs() = -b.coeffs();
    dot = -dot;
  }
  if (dot > 0.9995) {
    Quat q;
    q.coeffs() = (1.0 - u) * a.coeffs() + u * b.coeffs();
    return q.normalized();
  }
  const double theta = std::acos(std::clamp(dot, -1.0, 1.0));
  const double s = std::sin(theta);
  const double wa = std::sin((1.0 - u) * theta) / s;
  const double wb = std::sin(u * theta) / s;
  Quat q;
  q.coeffs() = wa * a.coeffs() + wb * b.coeffs();
  return q.normalized();
}

namespace {

Rigid sample_track(const BoneTrack& track, double t) {
  const auto& keys = track.keys;
  if (t <= keys.front().time) return {keys.front().rotation, keys.front().translation};
  if (t >= keys.back().time) return {keys.back().rotation, keys.back().translation};
  auto hi = std::upper_bound(keys.begin(), keys.end(), t,
                             [](double time, const TransformKey& k) { return time < k.time; });
  auto lo = hi - 1;
  const double span = hi->time - lo->time;
  const double u = span > 0.0 ? (t - lo->time) / span : 0.0;
  return {slerp(lo->rotation, hi->rotation, u), (1.0 - u) * lo->translation + u * hi->translation};
}

}  // namespace

std::vector<Rigid> pose_skeleton(const Skeleton& skeleton, const SkeletalAnimation& animation,
                                 double t) {
  std::vector<Rigid> local(skeleton.size());
  for (std::size_t b = 0; b < skeleton.size(); ++b) local[b] = skeleton.bones[b].bind_local;
  for (const auto& track : animation.tracks)
    if (!track.keys.empty()) local.at(track.bone) = sample_track(track, t);

  std::vector<Rigid> global(skeleton.size());
  for (std::size_t b = 0; b < skeleton.size(); ++b) {
    const int p = skeleton.bones[b].parent;
    global[b] = p == kInvalid ? local[b] : global[p] * local[b];
  }
  return global;
}

MeshState skin_vertices(const SkinnedSurface& surface, std::span<const Rigid> pose) {
  if (pose.size() != surface.skeleton.size())
    throw Error(ErrorCode::BadPose, "pose has " + std::to_string(pose.size()) +
                                        " transforms for " +
                                        std::to_string(surface.skeleton.size()) + " bones");
  const std::vector<Rigid> bind = surface.skeleton.bind_globals();
  std::vector<Rigid> skin(pose.size());
  for (std::size_t b = 0; b < pose.size(); ++b) skin[b] = pose[b] * bind[b].inverse();

  const std::size_t nv = surface.surface.vertex_count();
  MeshState state;
  state.positions.resize(nv);
  state.normals.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const Vec3& p = surface.surface.position(static_cast<VertexId>(v));
    const Vec3& n = surface.surface.normal(static_cast<VertexId>(v));
    Vec3 pos = Vec3::Zero(), nrm = Vec3::Zero();
    for (const BoneWeight& w : surface.weights[v]) {
      pos += w.weight * skin[w.bone].apply(p);
      nrm += w.weight * skin[w.bone].apply_vector(n);
    }
    state.positions[v] = pos;
    state.normals[v] = normalized_or(nrm, n);
  }
  return state;
}

}  // namespace npr
