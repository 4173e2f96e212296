#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "npr/io.hpp"
#include "npr/log.hpp"

namespace npr {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view s, std::size_t line) {
  // from_chars for double is available in libstdc++ 11.
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line, "bad number '" + std::string(s) + "'");
  return v;
}

long parse_long(std::string_view s, std::size_t line) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line, "bad index '" + std::string(s) + "'");
  return v;
}

// Reads a line and strips a trailing CR and comments.
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  return true;
}

Vec3 parse_vec3(const std::vector<std::string_view>& tok, std::size_t line) {
  if (tok.size() < 4) throw ParseError(line, "expected three numbers after '" + std::string(tok[0]) + "'");
  return {parse_double(tok[1], line), parse_double(tok[2], line), parse_double(tok[3], line)};
}

// 1-based or negative OBJ index to 0-based, given the current count.
int resolve_index(long idx, std::size_t count, std::size_t line) {
  long r = idx > 0 ? idx - 1 : static_cast<long>(count) + idx;
  if (idx == 0 || r < 0 || r >= static_cast<long>(count))
    throw ParseError(line, "index " + std::to_string(idx) + " out of range");
  return static_cast<int>(r);
}

struct Corner {
  int v = -1, vt = -1, vn = -1;
  bool operator==(const Corner&) const = default;
};

struct CornerHash {
  std::size_t operator()(const Corner& c) const {
    return std::hash<long long>()((static_cast<long long>(c.v) << 40) ^
                                  (static_cast<long long>(c.vt) << 20) ^ c.vn);
  }
};

}  // namespace

Surface load_obj(std::istream& in, const std::filesystem::path& base_dir) {
  std::vector<Vec3> positions, normals;
  std::size_t texcoord_count = 0;
  std::vector<std::array<Corner, 3>> corner_tris;
  MaterialTable materials;
  std::string material_name;

  std::string line;
  std::size_t lineno = 0;
  while (next_line(in, line)) {
    ++lineno;
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    const std::string_view cmd = tok[0];
    if (cmd == "v") {
      positions.push_back(parse_vec3(tok, lineno));
    } else if (cmd == "vn") {
      normals.push_back(parse_vec3(tok, lineno));
    } else if (cmd == "vt") {
      if (tok.size() < 3) throw ParseError(lineno, "vt needs two coordinates");
      parse_double(tok[1], lineno);
      parse_double(tok[2], lineno);
      ++texcoord_count;
    } else if (cmd == "f") {
      if (tok.size() < 4) throw ParseError(lineno, "face needs at least three vertices");
      std::vector<Corner> poly;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        const std::string_view t = tok[i];
        Corner c;
        const auto s1 = t.find('/');
        c.v = resolve_index(parse_long(t.substr(0, s1), lineno), positions.size(), lineno);
        if (s1 != std::string_view::npos) {
          const auto rest = t.substr(s1 + 1);
          const auto s2 = rest.find('/');
          const auto vt = rest.substr(0, s2);
          if (!vt.empty()) c.vt = resolve_index(parse_long(vt, lineno), texcoord_count, lineno);
          if (s2 != std::string_view::npos) {
            const auto vn = rest.substr(s2 + 1);
            if (!vn.empty()) c.vn = resolve_index(parse_long(vn, lineno), normals.size(), lineno);
          }
        }
        poly.push_back(c);
      }
      for (std::size_t i = 1; i + 1 < poly.size(); ++i)
        corner_tris.push_back({poly[0], poly[i], poly[i + 1]});
    } else if (cmd == "mtllib") {
      if (tok.size() < 2) throw ParseError(lineno, "mtllib needs a file name");
      if (!base_dir.empty()) {
        for (auto& [k, m] : load_mtl(base_dir / std::string(tok[1]))) materials.emplace(k, m);
      }
    } else if (cmd == "usemtl") {
      if (tok.size() < 2) throw ParseError(lineno, "usemtl needs a name");
      if (material_name.empty()) material_name = std::string(tok[1]);
    }
    // Groups, smoothing groups and other directives are ignored.
  }

  // The first corner seen for a position keeps the position's index; other
  // attribute combinations for the same position get split vertices.
  std::vector<Vec3> out_positions = positions;
  std::vector<int> out_normal(positions.size(), -1);
  std::vector<Corner> first_corner(positions.size());
  std::vector<bool> seen(positions.size(), false);
  std::unordered_map<Corner, int, CornerHash> split;
  std::vector<Triangle> triangles;
  triangles.reserve(corner_tris.size());
  for (const auto& tri : corner_tris) {
    Triangle t;
    for (int k = 0; k < 3; ++k) {
      const Corner& c = tri[k];
      if (!seen[c.v]) {
        seen[c.v] = true;
        first_corner[c.v] = c;
        out_normal[c.v] = c.vn;
        t[k] = c.v;
      } else if (first_corner[c.v] == c) {
        t[k] = c.v;
      } else if (auto it = split.find(c); it != split.end()) {
        t[k] = it->second;
      } else {
        const int id = static_cast<int>(out_positions.size());
        out_positions.push_back(positions[c.v]);
        out_normal.push_back(c.vn);
        split.emplace(c, id);
        t[k] = id;
      }
    }
    triangles.push_back(t);
  }

  Surface surface = Surface::build(std::move(out_positions), triangles);

  const bool all_normals = !triangles.empty() && std::all_of(out_normal.begin(), out_normal.end(),
                                                             [](int n) { return n >= 0; });
  if (all_normals) {
    std::vector<Vec3> file_normals(out_normal.size());
    for (std::size_t v = 0; v < out_normal.size(); ++v) file_normals[v] = normals[out_normal[v]];
    surface.set_normals(std::move(file_normals));
  }

  if (!material_name.empty()) {
    if (auto it = materials.find(material_name); it != materials.end()) {
      surface.material() = it->second;
    } else if (!base_dir.empty()) {
      log::warn("material '" + material_name + "' not found in material libraries");
    }
  }
  return surface;
}

Surface load_obj(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return load_obj(in, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

void write_obj(const Surface& surface, std::ostream& out) {
  std::ostringstream s;
  s.precision(17);
  for (const Vec3& p : surface.positions()) s << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  for (const Vec3& n : surface.normals()) s << "vn " << n.x() << ' ' << n.y() << ' ' << n.z() << '\n';
  for (const Triangle& t : surface.triangles())
    s << "f " << t[0] + 1 << "//" << t[0] + 1 << ' ' << t[1] + 1 << "//" << t[1] + 1 << ' '
      << t[2] + 1 << "//" << t[2] + 1 << '\n';
  out << s.str();
  if (!out) throw Error(ErrorCode::IoError, "failed writing OBJ");
}

void write_obj(const Surface& surface, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  write_obj(surface, out);
}

MaterialTable load_mtl(std::istream& in) {
  MaterialTable table;
  Material* current = nullptr;
  std::string line;
  std::size_t lineno = 0;
  auto need_current = [&](std::string_view cmd) {
    if (!current) throw ParseError(lineno, std::string(cmd) + " before newmtl");
  };
  while (next_line(in, line)) {
    ++lineno;
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    const std::string_view cmd = tok[0];
    if (cmd == "newmtl") {
      if (tok.size() < 2) throw ParseError(lineno, "newmtl needs a name");
      Material m;
      m.name = std::string(tok[1]);
      current = &(table[m.name] = m);
    } else if (cmd == "Ka" || cmd == "Kd" || cmd == "Ks") {
      need_current(cmd);
      const Vec3 c = parse_vec3(tok, lineno);
      (cmd == "Ka" ? current->ambient : cmd == "Kd" ? current->diffuse : current->specular) = c;
    } else if (cmd == "Ns") {
      need_current(cmd);
      if (tok.size() < 2) throw ParseError(lineno, "Ns needs a value");
      current->shininess = parse_double(tok[1], lineno);
    } else if (cmd == "map_Kd") {
      need_current(cmd);
      if (tok.size() < 2) throw ParseError(lineno, "map_Kd needs a file name");
      current->diffuse_texture = std::string(tok.back());
    } else {
      log::warn("mtl line " + std::to_string(lineno) + ": skipping unknown directive '" +
                std::string(cmd) + "'");
    }
  }
  for (auto& [name, m] : table) m.sanitize();
  return table;
}

MaterialTable load_mtl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return load_mtl(in);
}

}  // namespace npr
