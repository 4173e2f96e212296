#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "npr/mesh.hpp"

namespace npr {

/// Snapshot of a (possibly deformed) surface at one time sample. Shares
/// connectivity with the Surface it was produced from.
struct MeshState {
  std::vector<Vec3> positions;
  std::vector<Vec3> normals;
  double time = 0.0;
};

/// The surface's own geometry as a state at time 0.
MeshState static_state(const Surface& surface);

enum class Interpolation { Linear, CatmullRom };

struct Keyframe {
  std::string name;
  std::vector<Vec3> positions;
  std::vector<Vec3> normals;
};

/// Contiguous keyframe range [first, first + count).
struct FrameRange {
  int first = 0;
  int count = 0;
};

/// Keyframed mesh: every keyframe shares the base surface's connectivity.
/// Time is measured in keyframe units local to an animation.
struct VertexAnimatedSurface {
  Surface surface;
  std::vector<Keyframe> keyframes;
  std::map<std::string, FrameRange> animations;
  Interpolation interpolation = Interpolation::Linear;

  /// Throws IndexOutOfRange on mismatched keyframe sizes or bad ranges.
  void validate() const;
  const FrameRange& animation(std::string_view name) const;
};

MeshState interpolate_keyframes(const VertexAnimatedSurface& surface, std::string_view animation,
                                double t);

struct Bone {
  std::string name;
  int parent = kInvalid;
  Rigid bind_local;
};

/// Bones ordered parents-first.
struct Skeleton {
  std::vector<Bone> bones;

  std::size_t size() const { return bones.size(); }
  std::vector<Rigid> bind_globals() const;
  /// Throws CyclicSkeleton when a parent does not precede its child.
  void validate() const;
};

struct TransformKey {
  double time = 0.0;
  Quat rotation = Quat::Identity();
  Vec3 translation = Vec3::Zero();
};

struct BoneTrack {
  int bone = 0;
  std::vector<TransformKey> keys;  // ascending time
};

/// Time unit is seconds.
struct SkeletalAnimation {
  std::string name;
  std::vector<BoneTrack> tracks;

  double start_time() const;
  double end_time() const;
};

struct BoneWeight {
  int bone = 0;
  double weight = 0.0;
};

struct SkinnedSurface {
  Surface surface;  // bind pose
  Skeleton skeleton;
  std::vector<std::vector<BoneWeight>> weights;  // per vertex, sums to 1
  std::vector<SkeletalAnimation> animations;

  void validate() const;
  const SkeletalAnimation& animation(std::string_view name) const;
};

/// Shortest-arc spherical interpolation; normalized lerp when the
/// quaternions are nearly parallel (dot > 0.9995).
Quat slerp(const Quat& a, const Quat& b, double u);

/// Global transform of every bone at time t (clamped to the key range).
std::vector<Rigid> pose_skeleton(const Skeleton& skeleton, const SkeletalAnimation& animation,
                                 double t);

/// Linear blend skinning: p' = Σ w_i (G_i ∘ B_i⁻¹)(p). Throws BadPose.
MeshState skin_vertices(const SkinnedSurface& surface, std::span<const Rigid> pose);

}  // namespace npr
