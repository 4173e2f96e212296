#include <fstream>
#include <functional>

#include "json.hpp"
#include "npr/io.hpp"
#include "npr/log.hpp"

namespace npr {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) { throw ParseError(0, what); }

Vec3 vec3_of(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) schema_error(what + " must be an array of 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

// [w, x, y, z]
Quat quat_of(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 4) schema_error(what + " must be [w, x, y, z]");
  Quat q(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>());
  const double n = q.norm();
  if (n < 1e-12) schema_error(what + " is a zero quaternion");
  if (std::abs(n - 1.0) > 1e-6) log::warn(what + " is not unit length; normalized");
  q.normalize();
  return q;
}

Rigid rigid_of(const json& j, const std::string& what) {
  Rigid r;
  if (j.contains("rotation")) r.rotation = quat_of(j.at("rotation"), what + ".rotation");
  if (j.contains("translation")) r.translation = vec3_of(j.at("translation"), what + ".translation");
  return r;
}

// Parents-first order; throws CyclicSkeleton if the parent graph has a cycle.
std::vector<int> topological_order(const std::vector<int>& parent) {
  const int n = static_cast<int>(parent.size());
  std::vector<int> state(n, 0), order;  // 0 new, 1 visiting, 2 done
  order.reserve(n);
  std::function<void(int)> visit = [&](int b) {
    if (state[b] == 2) return;
    if (state[b] == 1) throw Error(ErrorCode::CyclicSkeleton, "bone " + std::to_string(b) + " is its own ancestor");
    state[b] = 1;
    if (parent[b] != kInvalid) visit(parent[b]);
    state[b] = 2;
    order.push_back(b);
  };
  for (int b = 0; b < n; ++b) visit(b);
  return order;
}

}  // namespace

SkinnedSurface load_skin(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(0, e.what());
  }

  try {
    if (doc.value("format", std::string()) != "zskin-1")
      schema_error("missing or unsupported \"format\" (expected \"zskin-1\")");

    std::vector<Vec3> positions;
    for (const auto& p : doc.at("positions")) positions.push_back(vec3_of(p, "positions[]"));
    std::vector<Triangle> triangles;
    for (const auto& t : doc.at("triangles")) {
      if (!t.is_array() || t.size() != 3) schema_error("triangles[] must hold 3 indices");
      triangles.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    }

    // Bones as written in the file.
    const auto& jbones = doc.at("bones");
    const int nb = static_cast<int>(jbones.size());
    std::vector<Bone> file_bones(nb);
    std::vector<int> parent(nb, kInvalid);
    for (int b = 0; b < nb; ++b) {
      const auto& jb = jbones[b];
      file_bones[b].name = jb.value("name", "bone" + std::to_string(b));
      if (jb.contains("parent") && !jb.at("parent").is_null()) {
        const int p = jb.at("parent").get<int>();
        if (p < 0 || p >= nb) schema_error("bone " + std::to_string(b) + " has parent out of range");
        if (p == b) throw Error(ErrorCode::CyclicSkeleton, "bone " + std::to_string(b) + " is its own parent");
        parent[b] = p;
      }
      file_bones[b].bind_local = rigid_of(jb, "bones[" + std::to_string(b) + "]");
    }

    const std::vector<int> order = topological_order(parent);
    std::vector<int> remap(nb);
    for (int i = 0; i < nb; ++i) remap[order[i]] = i;

    SkinnedSurface out;
    out.skeleton.bones.resize(nb);
    for (int i = 0; i < nb; ++i) {
      Bone bone = file_bones[order[i]];
      bone.parent = parent[order[i]] == kInvalid ? kInvalid : remap[parent[order[i]]];
      out.skeleton.bones[i] = std::move(bone);
    }

    const auto& jweights = doc.at("weights");
    if (jweights.size() != positions.size())
      schema_error("weights must list one entry per vertex");
    out.weights.resize(positions.size());
    for (std::size_t v = 0; v < positions.size(); ++v) {
      double sum = 0.0;
      for (const auto& pair : jweights[v]) {
        if (!pair.is_array() || pair.size() != 2) schema_error("weights entries are [bone, weight]");
        const int bone = pair[0].get<int>();
        const double w = pair[1].get<double>();
        if (bone < 0 || bone >= nb)
          throw Error(ErrorCode::BadWeight, "vertex " + std::to_string(v) + " references bone " + std::to_string(bone));
        if (w < 0.0) throw Error(ErrorCode::BadWeight, "vertex " + std::to_string(v) + " has a negative weight");
        out.weights[v].push_back({remap[bone], w});
        sum += w;
      }
      if (sum <= 0.0) throw Error(ErrorCode::BadWeight, "vertex " + std::to_string(v) + " has no weight");
      if (std::abs(sum - 1.0) > 1e-4)
        log::warn("weights of vertex " + std::to_string(v) + " sum to " + std::to_string(sum) + "; renormalized");
      for (auto& w : out.weights[v]) w.weight /= sum;
    }

    if (doc.contains("animations")) {
      for (const auto& ja : doc.at("animations")) {
        SkeletalAnimation anim;
        anim.name = ja.at("name").get<std::string>();
        for (const auto& jt : ja.at("tracks")) {
          BoneTrack track;
          const int bone = jt.at("bone").get<int>();
          if (bone < 0 || bone >= nb) schema_error("track references bone " + std::to_string(bone));
          track.bone = remap[bone];
          for (const auto& jk : jt.at("keys")) {
            TransformKey key;
            key.time = jk.at("time").get<double>();
            const Rigid r = rigid_of(jk, "key");
            key.rotation = r.rotation;
            key.translation = r.translation;
            track.keys.push_back(key);
          }
          std::stable_sort(track.keys.begin(), track.keys.end(),
                           [](const TransformKey& a, const TransformKey& b) { return a.time < b.time; });
          anim.tracks.push_back(std::move(track));
        }
        out.animations.push_back(std::move(anim));
      }
    }

    out.surface = Surface::build(std::move(positions), triangles);
    out.validate();
    return out;
  } catch (const json::exception& e) {
    throw ParseError(0, e.what());
  }
}

SkinnedSurface load_skin(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return load_skin(in);
}

}  // namespace npr
