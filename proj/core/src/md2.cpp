#include <cctype>
#include <cstring>
#include <fstream>

#include "npr/io.hpp"
#include "npr/log.hpp"

namespace npr {
namespace {

constexpr std::uint32_t kMd2Magic = 0x32504449;  // "IDP2" little-endian
constexpr std::int32_t kMd2Version = 8;
constexpr std::size_t kHeaderSize = 17 * 4;
constexpr std::size_t kFrameNameSize = 16;

// Quake II anorms.h
constexpr std::array<std::array<float, 3>, 162> kNormals = {{
    {-0.525731f, 0.000000f, 0.850651f},   {-0.442863f, 0.238856f, 0.864188f},
    {-0.295242f, 0.000000f, 0.955423f},   {-0.309017f, 0.500000f, 0.809017f},
    {-0.162460f, 0.262866f, 0.951056f},   {0.000000f, 0.000000f, 1.000000f},
    {0.000000f, 0.850651f, 0.525731f},    {-0.147621f, 0.716567f, 0.681718f},
    {0.147621f, 0.716567f, 0.681718f},    {0.000000f, 0.525731f, 0.850651f},
    {0.309017f, 0.500000f, 0.809017f},    {0.525731f, 0.000000f, 0.850651f},
    {0.295242f, 0.000000f, 0.955423f},    {0.442863f, 0.238856f, 0.864188f},
    {0.162460f, 0.262866f, 0.951056f},    {-0.681718f, 0.147621f, 0.716567f},
    {-0.809017f, 0.309017f, 0.500000f},   {-0.587785f, 0.425325f, 0.688191f},
    {-0.850651f, 0.525731f, 0.000000f},   {-0.864188f, 0.442863f, 0.238856f},
    {-0.716567f, 0.681718f, 0.147621f},   {-0.688191f, 0.587785f, 0.425325f},
    {-0.500000f, 0.809017f, 0.309017f},   {-0.238856f, 0.864188f, 0.442863f},
    {-0.425325f, 0.688191f, 0.587785f},   {-0.716567f, 0.681718f, -0.147621f},
    {-0.500000f, 0.809017f, -0.309017f},  {-0.525731f, 0.850651f, 0.000000f},
    {0.000000f, 0.850651f, -0.525731f},   {-0.238856f, 0.864188f, -0.442863f},
    {0.000000f, 0.955423f, -0.295242f},   {-0.262866f, 0.951056f, -0.162460f},
    {0.000000f, 1.000000f, 0.000000f},    {0.000000f, 0.955423f, 0.295242f},
    {-0.262866f, 0.951056f, 0.162460f},   {0.238856f, 0.864188f, 0.442863f},
    {0.262866f, 0.951056f, 0.162460f},    {0.500000f, 0.809017f, 0.309017f},
    {0.238856f, 0.864188f, -0.442863f},   {0.262866f, 0.951056f, -0.162460f},
    {0.500000f, 0.809017f, -0.309017f},   {0.850651f, 0.525731f, 0.000000f},
    {0.716567f, 0.681718f, 0.147621f},    {0.716567f, 0.681718f, -0.147621f},
    {0.525731f, 0.850651f, 0.000000f},    {0.425325f, 0.688191f, 0.587785f},
    {0.864188f, 0.442863f, 0.238856f},    {0.688191f, 0.587785f, 0.425325f},
    {0.809017f, 0.309017f, 0.500000f},    {0.681718f, 0.147621f, 0.716567f},
    {0.587785f, 0.425325f, 0.688191f},    {0.955423f, 0.295242f, 0.000000f},
    {1.000000f, 0.000000f, 0.000000f},    {0.951056f, 0.162460f, 0.262866f},
    {0.850651f, -0.525731f, 0.000000f},   {0.955423f, -0.295242f, 0.000000f},
    {0.864188f, -0.442863f, 0.238856f},   {0.951056f, -0.162460f, 0.262866f},
    {0.809017f, -0.309017f, 0.500000f},   {0.681718f, -0.147621f, 0.716567f},
    {0.850651f, 0.000000f, 0.525731f},    {0.864188f, 0.442863f, -0.238856f},
    {0.809017f, 0.309017f, -0.500000f},   {0.951056f, 0.162460f, -0.262866f},
    {0.525731f, 0.000000f, -0.850651f},   {0.681718f, 0.147621f, -0.716567f},
    {0.681718f, -0.147621f, -0.716567f},  {0.850651f, 0.000000f, -0.525731f},
    {0.809017f, -0.309017f, -0.500000f},  {0.864188f, -0.442863f, -0.238856f},
    {0.951056f, -0.162460f, -0.262866f},  {0.147621f, 0.716567f, -0.681718f},
    {0.309017f, 0.500000f, -0.809017f},   {0.425325f, 0.688191f, -0.587785f},
    {0.442863f, 0.238856f, -0.864188f},   {0.587785f, 0.425325f, -0.688191f},
    {0.688191f, 0.587785f, -0.425325f},   {-0.147621f, 0.716567f, -0.681718f},
    {-0.309017f, 0.500000f, -0.809017f},  {0.000000f, 0.525731f, -0.850651f},
    {-0.525731f, 0.000000f, -0.850651f},  {-0.442863f, 0.238856f, -0.864188f},
    {-0.295242f, 0.000000f, -0.955423f},  {-0.162460f, 0.262866f, -0.951056f},
    {0.000000f, 0.000000f, -1.000000f},   {0.295242f, 0.000000f, -0.955423f},
    {0.162460f, 0.262866f, -0.951056f},   {-0.442863f, -0.238856f, -0.864188f},
    {-0.309017f, -0.500000f, -0.809017f}, {-0.162460f, -0.262866f, -0.951056f},
    {0.000000f, -0.850651f, -0.525731f},  {-0.147621f, -0.716567f, -0.681718f},
    {0.147621f, -0.716567f, -0.681718f},  {0.000000f, -0.525731f, -0.850651f},
    {0.309017f, -0.500000f, -0.809017f},  {0.442863f, -0.238856f, -0.864188f},
    {0.162460f, -0.262866f, -0.951056f},  {0.238856f, -0.864188f, -0.442863f},
    {0.500000f, -0.809017f, -0.309017f},  {0.425325f, -0.688191f, -0.587785f},
    {0.716567f, -0.681718f, -0.147621f},  {0.688191f, -0.587785f, -0.425325f},
    {0.587785f, -0.425325f, -0.688191f},  {0.000000f, -0.955423f, -0.295242f},
    {0.000000f, -1.000000f, 0.000000f},   {0.262866f, -0.951056f, -0.162460f},
    {0.000000f, -0.850651f, 0.525731f},   {0.000000f, -0.955423f, 0.295242f},
    {0.238856f, -0.864188f, 0.442863f},   {0.262866f, -0.951056f, 0.162460f},
    {0.500000f, -0.809017f, 0.309017f},   {0.716567f, -0.681718f, 0.147621f},
    {0.525731f, -0.850651f, 0.000000f},   {-0.238856f, -0.864188f, -0.442863f},
    {-0.500000f, -0.809017f, -0.309017f}, {-0.262866f, -0.951056f, -0.162460f},
    {-0.850651f, -0.525731f, 0.000000f},  {-0.716567f, -0.681718f, -0.147621f},
    {-0.716567f, -0.681718f, 0.147621f},  {-0.525731f, -0.850651f, 0.000000f},
    {-0.500000f, -0.809017f, 0.309017f},  {-0.238856f, -0.864188f, 0.442863f},
    {-0.262866f, -0.951056f, 0.162460f},  {-0.864188f, -0.442863f, 0.238856f},
    {-0.809017f, -0.309017f, 0.500000f},  {-0.688191f, -0.587785f, 0.425325f},
    {-0.681718f, -0.147621f, 0.716567f},  {-0.442863f, -0.238856f, 0.864188f},
    {-0.587785f, -0.425325f, 0.688191f},  {-0.309017f, -0.500000f, 0.809017f},
    {-0.147621f, -0.716567f, 0.681718f},  {-0.425325f, -0.688191f, 0.587785f},
    {-0.162460f, -0.262866f, 0.951056f},  {0.442863f, -0.238856f, 0.864188f},
    {0.162460f, -0.262866f, 0.951056f},   {0.309017f, -0.500000f, 0.809017f},
    {0.147621f, -0.716567f, 0.681718f},   {0.000000f, -0.525731f, 0.850651f},
    {0.425325f, -0.688191f, 0.587785f},   {0.587785f, -0.425325f, 0.688191f},
    {0.688191f, -0.587785f, 0.425325f},   {-0.955423f, 0.295242f, 0.000000f},
    {-0.951056f, 0.162460f, 0.262866f},   {-1.000000f, 0.000000f, 0.000000f},
    {-0.850651f, 0.000000f, 0.525731f},   {-0.955423f, -0.295242f, 0.000000f},
    {-0.951056f, -0.162460f, 0.262866f},  {-0.864188f, 0.442863f, -0.238856f},
    {-0.951056f, 0.162460f, -0.262866f},  {-0.809017f, 0.309017f, -0.500000f},
    {-0.864188f, -0.442863f, -0.238856f}, {-0.951056f, -0.162460f, -0.262866f},
    {-0.809017f, -0.309017f, -0.500000f}, {-0.681718f, 0.147621f, -0.716567f},
    {-0.681718f, -0.147621f, -0.716567f}, {-0.850651f, 0.000000f, -0.525731f},
    {-0.688191f, 0.587785f, -0.425325f},  {-0.587785f, 0.425325f, -0.688191f},
    {-0.425325f, 0.688191f, -0.587785f},  {-0.425325f, -0.688191f, -0.587785f},
    {-0.587785f, -0.425325f, -0.688191f}, {-0.688191f, -0.587785f, -0.425325f},
}};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void require(std::size_t offset, std::size_t size, const char* what) const {
    if (offset > bytes_.size() || size > bytes_.size() - offset)
      throw Error(ErrorCode::TruncatedFile, std::string(what) + " extends past end of file");
  }
  std::int32_t i32(std::size_t at) const {
    require(at, 4, "int32");
    return static_cast<std::int32_t>(u32(at));
  }
  std::uint32_t u32(std::size_t at) const {
    require(at, 4, "uint32");
    return static_cast<std::uint32_t>(bytes_[at]) | (static_cast<std::uint32_t>(bytes_[at + 1]) << 8) |
           (static_cast<std::uint32_t>(bytes_[at + 2]) << 16) |
           (static_cast<std::uint32_t>(bytes_[at + 3]) << 24);
  }
  std::int16_t i16(std::size_t at) const {
    require(at, 2, "int16");
    return static_cast<std::int16_t>(bytes_[at] | (bytes_[at + 1] << 8));
  }
  float f32(std::size_t at) const {
    const std::uint32_t bits = u32(at);
    float f;
    std::memcpy(&f, &bits, sizeof f);
    return f;
  }
  std::uint8_t u8(std::size_t at) const {
    require(at, 1, "byte");
    return bytes_[at];
  }
  std::string fixed_string(std::size_t at, std::size_t size) const {
    require(at, size, "string");
    std::string s;
    for (std::size_t i = 0; i < size && bytes_[at + i] != 0; ++i)
      s.push_back(static_cast<char>(bytes_[at + i]));
    return s;
  }

 private:
  std::span<const std::uint8_t> bytes_;
};

struct Header {
  std::int32_t ident, version, skin_width, skin_height, frame_size, num_skins, num_xyz, num_st,
      num_tris, num_glcmds, num_frames, ofs_skins, ofs_st, ofs_tris, ofs_frames, ofs_glcmds,
      ofs_end;
};

// "run12" -> "run"
std::string animation_prefix(const std::string& frame_name) {
  std::size_t end = frame_name.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(frame_name[end - 1]))) --end;
  return end == 0 ? frame_name : frame_name.substr(0, end);
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_i16(std::vector<std::uint8_t>& out, std::int16_t v) {
  const auto u = static_cast<std::uint16_t>(v);
  out.push_back(static_cast<std::uint8_t>(u & 0xff));
  out.push_back(static_cast<std::uint8_t>(u >> 8));
}
void put_f32(std::vector<std::uint8_t>& out, float f) {
  std::uint32_t bits;
  std::memcpy(&bits, &f, sizeof bits);
  put_u32(out, bits);
}

}  // namespace

std::span<const std::array<float, 3>, 162> md2_normal_table() { return kNormals; }

VertexAnimatedSurface load_md2(std::span<const std::uint8_t> bytes) {
  const ByteReader r(bytes);
  if (bytes.size() < 4 || r.u32(0) != kMd2Magic) throw Error(ErrorCode::BadMagic, "not an MD2 file");
  r.require(0, kHeaderSize, "header");
  std::array<std::int32_t, 17> f{};
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = r.i32(i * 4);
  const Header h{f[0], f[1], f[2],  f[3],  f[4],  f[5],  f[6],  f[7], f[8],
                 f[9], f[10], f[11], f[12], f[13], f[14], f[15], f[16]};
  if (h.version != kMd2Version)
    throw Error(ErrorCode::UnsupportedVersion, "MD2 version " + std::to_string(h.version));
  if (h.num_xyz < 0 || h.num_tris < 0 || h.num_frames < 1 || h.num_st < 0)
    throw Error(ErrorCode::TruncatedFile, "negative or empty MD2 lump counts");

  const auto nv = static_cast<std::size_t>(h.num_xyz);
  const std::size_t frame_bytes = 24 + kFrameNameSize + 4 * nv;
  if (static_cast<std::size_t>(h.frame_size) < frame_bytes)
    throw Error(ErrorCode::TruncatedFile, "frame size too small for vertex count");
  r.require(h.ofs_st, static_cast<std::size_t>(h.num_st) * 4, "texcoord lump");
  r.require(h.ofs_tris, static_cast<std::size_t>(h.num_tris) * 12, "triangle lump");
  r.require(h.ofs_frames, static_cast<std::size_t>(h.frame_size) * h.num_frames, "frame lump");
  if (h.num_glcmds > 0) r.require(h.ofs_glcmds, static_cast<std::size_t>(h.num_glcmds) * 4, "gl command lump");

  // Quake's front faces wind clockwise; flip to counterclockwise.
  std::vector<Triangle> triangles;
  triangles.reserve(h.num_tris);
  for (std::int32_t t = 0; t < h.num_tris; ++t) {
    const std::size_t at = h.ofs_tris + static_cast<std::size_t>(t) * 12;
    const int a = r.i16(at), b = r.i16(at + 2), c = r.i16(at + 4);
    for (int idx : {a, b, c})
      if (idx < 0 || idx >= h.num_xyz)
        throw Error(ErrorCode::IndexOutOfRange, "MD2 triangle references vertex " + std::to_string(idx));
    if (a == b || b == c || a == c) {
      log::warn("MD2 triangle " + std::to_string(t) + " is degenerate; skipped");
      continue;
    }
    triangles.push_back({a, c, b});
  }

  VertexAnimatedSurface out;
  out.keyframes.resize(h.num_frames);
  for (std::int32_t f = 0; f < h.num_frames; ++f) {
    const std::size_t at = h.ofs_frames + static_cast<std::size_t>(f) * h.frame_size;
    const Vec3 scale(r.f32(at), r.f32(at + 4), r.f32(at + 8));
    const Vec3 translate(r.f32(at + 12), r.f32(at + 16), r.f32(at + 20));
    Keyframe& k = out.keyframes[f];
    k.name = r.fixed_string(at + 24, kFrameNameSize);
    k.positions.resize(nv);
    k.normals.resize(nv);
    const std::size_t verts = at + 24 + kFrameNameSize;
    for (std::size_t v = 0; v < nv; ++v) {
      const std::size_t p = verts + 4 * v;
      for (int axis = 0; axis < 3; ++axis)
        k.positions[v][axis] = scale[axis] * static_cast<double>(r.u8(p + axis)) + translate[axis];
      const std::uint8_t ni = r.u8(p + 3);
      if (ni >= kNormals.size())
        throw Error(ErrorCode::IndexOutOfRange, "MD2 normal index " + std::to_string(ni));
      k.normals[v] = Vec3(kNormals[ni][0], kNormals[ni][1], kNormals[ni][2]).normalized();
    }
  }

  // Group consecutive frames sharing a name prefix into animations.
  std::map<std::string, int> repeats;
  for (int f = 0; f < h.num_frames;) {
    const std::string prefix = animation_prefix(out.keyframes[f].name);
    int g = f + 1;
    while (g < h.num_frames && animation_prefix(out.keyframes[g].name) == prefix) ++g;
    const int n = repeats[prefix]++;
    const std::string name = n == 0 ? prefix : prefix + "_" + std::to_string(n + 1);
    out.animations[name] = {f, g - f};
    f = g;
  }

  out.surface = Surface::build(out.keyframes[0].positions, triangles);
  out.surface.set_normals(out.keyframes[0].normals);
  out.validate();
  return out;
}

VertexAnimatedSurface load_md2(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  return load_md2(bytes);
}

std::vector<std::uint8_t> write_md2(const Md2Document& doc) {
  const std::int32_t nv =
      doc.frames.empty() ? 0 : static_cast<std::int32_t>(doc.frames.front().vertices.size());
  const std::int32_t frame_size = 24 + static_cast<std::int32_t>(kFrameNameSize) + 4 * nv;
  const std::int32_t ofs_st = static_cast<std::int32_t>(kHeaderSize);
  const std::int32_t ofs_tris = ofs_st + 4 * static_cast<std::int32_t>(doc.texcoords.size());
  const std::int32_t ofs_frames = ofs_tris + 12 * static_cast<std::int32_t>(doc.triangles.size());
  const std::int32_t ofs_end = ofs_frames + frame_size * static_cast<std::int32_t>(doc.frames.size());

  std::vector<std::uint8_t> out;
  const std::int32_t header[17] = {static_cast<std::int32_t>(kMd2Magic),
                                   kMd2Version,
                                   doc.skin_width,
                                   doc.skin_height,
                                   frame_size,
                                   0,
                                   nv,
                                   static_cast<std::int32_t>(doc.texcoords.size()),
                                   static_cast<std::int32_t>(doc.triangles.size()),
                                   0,
                                   static_cast<std::int32_t>(doc.frames.size()),
                                   ofs_st,
                                   ofs_st,
                                   ofs_tris,
                                   ofs_frames,
                                   ofs_end,
                                   ofs_end};
  for (std::int32_t v : header) put_u32(out, static_cast<std::uint32_t>(v));
  for (const auto& st : doc.texcoords) {
    put_i16(out, st[0]);
    put_i16(out, st[1]);
  }
  for (const auto& tri : doc.triangles)
    for (std::int16_t v : tri) put_i16(out, v);
  for (const auto& frame : doc.frames) {
    for (float s : frame.scale) put_f32(out, s);
    for (float t : frame.translate) put_f32(out, t);
    char name[kFrameNameSize] = {};
    std::strncpy(name, frame.name.c_str(), kFrameNameSize - 1);
    out.insert(out.end(), name, name + kFrameNameSize);
    for (const auto& v : frame.vertices) out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace npr
