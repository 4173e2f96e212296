#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "npr/animation.hpp"
#include "npr/mesh.hpp"

namespace npr {

using MaterialTable = std::map<std::string, Material>;

/// Wavefront OBJ subset: v, vn, vt, f (fans triangulated), mtllib, usemtl.
/// `base_dir` resolves mtllib references; empty skips material libraries.
Surface load_obj(std::istream& in, const std::filesystem::path& base_dir = {});
Surface load_obj(const std::filesystem::path& path);

/// Positions, normals and faces only.
void write_obj(const Surface& surface, std::ostream& out);
void write_obj(const Surface& surface, const std::filesystem::path& path);

MaterialTable load_mtl(std::istream& in);
MaterialTable load_mtl(const std::filesystem::path& path);

/// The 162 precomputed unit normals indexed by MD2 frame-vertex normal bytes.
std::span<const std::array<float, 3>, 162> md2_normal_table();

/// Quake II MD2 (magic "IDP2", version 8).
VertexAnimatedSurface load_md2(std::span<const std::uint8_t> bytes);
VertexAnimatedSurface load_md2(const std::filesystem::path& path);

/// Authoring-side description of an MD2 file, used to write fixtures.
struct Md2Frame {
  std::string name;
  std::array<float, 3> scale{1, 1, 1};
  std::array<float, 3> translate{0, 0, 0};
  std::vector<std::array<std::uint8_t, 4>> vertices;  // x, y, z, normal index
};
struct Md2Document {
  int skin_width = 8;
  int skin_height = 8;
  std::vector<std::array<std::int16_t, 2>> texcoords;
  std::vector<std::array<std::int16_t, 6>> triangles;  // 3 vertex indices, 3 texcoord indices
  std::vector<Md2Frame> frames;
};
std::vector<std::uint8_t> write_md2(const Md2Document& doc);

/// Skinned mesh in the JSON "zskin-1" schema (see docs/zskin-format.md).
SkinnedSurface load_skin(std::istream& in);
SkinnedSurface load_skin(const std::filesystem::path& path);

enum class SurfaceKind { Static, VertexAnimated, Skinned };

using LoadedSurface = std::variant<Surface, VertexAnimatedSurface, SkinnedSurface>;

/// Abstract factory for surfaces read from a file.
class SurfaceLoader {
 public:
  virtual ~SurfaceLoader() = default;
  virtual SurfaceKind kind() const { return SurfaceKind::Static; }
  virtual LoadedSurface load(const std::filesystem::path& path) const = 0;
};

class VertexAnimatedLoader : public SurfaceLoader {
 public:
  SurfaceKind kind() const override { return SurfaceKind::VertexAnimated; }
  LoadedSurface load(const std::filesystem::path& path) const override {
    return load_animated(path);
  }
  virtual VertexAnimatedSurface load_animated(const std::filesystem::path& path) const = 0;
};

class SkinnedLoader : public SurfaceLoader {
 public:
  SurfaceKind kind() const override { return SurfaceKind::Skinned; }
  LoadedSurface load(const std::filesystem::path& path) const override {
    return load_skinned(path);
  }
  virtual SkinnedSurface load_skinned(const std::filesystem::path& path) const = 0;
};

class ObjLoader final : public SurfaceLoader {
 public:
  LoadedSurface load(const std::filesystem::path& path) const override { return load_obj(path); }
};

class Md2Loader final : public VertexAnimatedLoader {
 public:
  VertexAnimatedSurface load_animated(const std::filesystem::path& path) const override {
    return load_md2(path);
  }
};

class SkinLoader final : public SkinnedLoader {
 public:
  SkinnedSurface load_skinned(const std::filesystem::path& path) const override {
    return load_skin(path);
  }
};

/// Maps lowercase file extensions (with the dot) to loaders.
class LoaderRegistry {
 public:
  /// obj, md2 and zskin.
  static LoaderRegistry with_defaults();

  /// Throws DuplicateName if the extension already has a loader.
  void add(const std::string& extension, std::unique_ptr<SurfaceLoader> loader);
  /// Throws NoLoader.
  const SurfaceLoader& for_path(const std::filesystem::path& path) const;
  LoadedSurface load(const std::filesystem::path& path) const { return for_path(path).load(path); }
  std::vector<std::string> extensions() const;

 private:
  std::map<std::string, std::unique_ptr<SurfaceLoader>> loaders_;
};

/// Reads a whole file into memory. Throws IoError.
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);

}  // namespace npr
