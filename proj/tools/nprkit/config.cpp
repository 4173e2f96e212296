#include "config.hpp"

#include <fstream>
#include <sstream>

#include "npr/error.hpp"

namespace nprcli {

using nlohmann::json;
using npr::Error;
using npr::ErrorCode;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    bad(what + ": '" + text + "' is not a number");
  }
  if (used != text.size()) bad(what + ": '" + text + "' is not a number");
  return v;
}

npr::Vec3 vec3_text(const std::string& text, const std::string& what) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) bad(what + " needs three comma-separated numbers");
  return {number(parts[0], what), number(parts[1], what), number(parts[2], what)};
}

npr::Vec3 vec3_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number())
    bad(what + " must be an array of three numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

template <class T>
T get(const json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    bad(what + " has the wrong type");
  }
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!j.is_object()) bad(what + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) bad("unknown key '" + key + "' in " + what);
  }
}

std::vector<std::string> string_list(const json& j, const std::string& what) {
  if (j.is_string()) return {j.get<std::string>()};
  if (!j.is_array()) bad(what + " must be a string or an array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) out.push_back(get<std::string>(item, what));
  return out;
}

npr::ImageOp parse_image_op(const json& op, double gain) {
  if (op.is_object()) {
    check_keys(op, {"kernel"}, "image op");
    const auto k = get<std::vector<double>>(op.at("kernel"), "kernel");
    if (k.size() != 9) bad("kernel must have 9 entries");
    npr::Kernel3 kernel;
    std::copy(k.begin(), k.end(), kernel.begin());
    return npr::ConvolutionOp{kernel};
  }
  const auto name = get<std::string>(op, "image op");
  if (name == "sobel") return npr::SobelOp{};
  if (name == "edge_mask") return npr::EdgeMaskOp{gain};
  if (name == "identity") return npr::ConvolutionOp{npr::kernels::identity};
  if (name == "box") return npr::ConvolutionOp{npr::kernels::box};
  if (name == "sobel_x") return npr::ConvolutionOp{npr::kernels::sobel_x};
  if (name == "sobel_y") return npr::ConvolutionOp{npr::kernels::sobel_y};
  bad("unknown image op '" + name + "'");
}

std::vector<npr::RenderPass> parse_passes(const json& j, const npr::ShaderConfig& default_shader,
                                          const npr::Material& material, const npr::LineStyle& line) {
  if (!j.is_array()) bad("passes must be an array");
  std::vector<npr::RenderPass> out;
  for (const json& p : j) {
    check_keys(p, {"type", "target", "style", "shader", "wireframe", "cull", "input", "op", "gain", "blend",
                   "contours", "line", "passes"},
               "pass");
    const auto type = get<std::string>(p.at("type"), "pass type");
    npr::RenderPass pass;
    pass.target = p.value("target", std::string(npr::kScreen));
    if (type == "surface") {
      npr::SurfacePass s;
      s.shader = p.contains("style") ? make_shader(get<std::string>(p.at("style"), "style"),
                                                   p.value("shader", json::object()), material)
                                     : default_shader;
      s.options.wireframe = p.value("wireframe", false);
      s.options.cull_backfaces = p.value("cull", true);
      pass.kind = s;
    } else if (type == "image") {
      npr::ImagePass s;
      s.input = get<std::string>(p.at("input"), "image pass input");
      s.op = parse_image_op(p.value("op", json("sobel")), p.value("gain", 1.0));
      const auto blend = p.value("blend", std::string("replace"));
      if (blend == "multiply") s.blend = npr::BlendMode::Multiply;
      else if (blend != "replace") bad("unknown blend '" + blend + "'");
      pass.kind = s;
    } else if (type == "lines") {
      npr::LinePass s;
      s.contours = get<std::string>(p.at("contours"), "line pass contours");
      s.style = p.contains("line") ? parse_line_style(p.at("line"), line) : line;
      pass.kind = s;
    } else if (type == "composite") {
      pass.kind = npr::CompositePass{parse_passes(p.at("passes"), default_shader, material, line)};
    } else {
      bad("unknown pass type '" + type + "'");
    }
    out.push_back(std::move(pass));
  }
  return out;
}

}  // namespace

npr::Color parse_color(const std::string& text) { return vec3_text(text, "color"); }

npr::Smoothing parse_smoothing(const std::string& name) {
  if (name == "none") return npr::Smoothing::None;
  if (name == "catmull-rom") return npr::Smoothing::CatmullRom;
  if (name == "b-spline") return npr::Smoothing::BSpline;
  bad("unknown smoothing '" + name + "' (none, catmull-rom, b-spline)");
}

npr::LineStyle parse_line_style(const json& j, npr::LineStyle s) {
  check_keys(j, {"smoothing", "samples", "width", "color", "antialias", "depth_bias"}, "line");
  if (j.contains("smoothing")) s.smoothing = parse_smoothing(get<std::string>(j.at("smoothing"), "smoothing"));
  if (j.contains("samples")) s.samples = get<int>(j.at("samples"), "samples");
  if (j.contains("width")) s.width = get<double>(j.at("width"), "width");
  if (j.contains("color")) s.color = vec3_json(j.at("color"), "line color");
  if (j.contains("antialias")) s.antialias = get<bool>(j.at("antialias"), "antialias");
  if (j.contains("depth_bias")) s.depth_bias = get<double>(j.at("depth_bias"), "depth_bias");
  return s;
}

npr::ShaderConfig make_shader(const std::string& style, const json& p, const npr::Material& material) {
  auto light = [&](npr::Vec3 fallback) {
    return p.contains("light_dir") ? vec3_json(p.at("light_dir"), "light_dir") : fallback;
  };
  npr::ShaderConfig out;
  if (style == "phong") {
    check_keys(p, {"ambient", "diffuse", "specular", "shininess", "light_dir"}, "phong shader");
    npr::PhongShader s;
    s.material = material;
    if (p.contains("ambient")) s.material.ambient = vec3_json(p.at("ambient"), "ambient");
    if (p.contains("diffuse")) s.material.diffuse = vec3_json(p.at("diffuse"), "diffuse");
    if (p.contains("specular")) s.material.specular = vec3_json(p.at("specular"), "specular");
    if (p.contains("shininess")) s.material.shininess = get<double>(p.at("shininess"), "shininess");
    s.light_dir = light(s.light_dir);
    out = s;
  } else if (style == "gooch") {
    check_keys(p, {"kd", "k_blue", "k_yellow", "alpha", "beta", "light_dir"}, "gooch shader");
    npr::GoochShader s;
    if (p.contains("kd")) s.kd = vec3_json(p.at("kd"), "kd");
    if (p.contains("k_blue")) s.k_blue = vec3_json(p.at("k_blue"), "k_blue");
    if (p.contains("k_yellow")) s.k_yellow = vec3_json(p.at("k_yellow"), "k_yellow");
    if (p.contains("alpha")) s.alpha = get<double>(p.at("alpha"), "alpha");
    if (p.contains("beta")) s.beta = get<double>(p.at("beta"), "beta");
    s.light_dir = light(s.light_dir);
    out = s;
  } else if (style == "toon") {
    check_keys(p, {"levels", "base", "light_dir"}, "toon shader");
    npr::ToonShader s;
    if (p.contains("levels")) s.levels = get<int>(p.at("levels"), "levels");
    if (p.contains("base")) s.base = vec3_json(p.at("base"), "base");
    s.light_dir = light(s.light_dir);
    out = s;
  } else if (style == "normal") {
    check_keys(p, {}, "normal shader");
    out = npr::NormalShader{};
  } else if (style == "flat") {
    check_keys(p, {"color"}, "flat shader");
    npr::FlatShader s;
    if (p.contains("color")) s.color = vec3_json(p.at("color"), "color");
    out = s;
  } else {
    bad("unknown style '" + style + "' (phong, gooch, toon, normal, flat, none)");
  }
  npr::validate(out);
  return out;
}

npr::Camera parse_camera(const std::string& text, const npr::Camera& base) {
  npr::Camera c = base;
  for (const std::string& item : split(text, ';')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) bad("camera item '" + item + "' is not key=value");
    const std::string key = trim(item.substr(0, eq)), value = trim(item.substr(eq + 1));
    if (key == "eye") c.eye = vec3_text(value, "eye");
    else if (key == "target") c.target = vec3_text(value, "target");
    else if (key == "up") c.up = vec3_text(value, "up");
    else if (key == "fov") c.fov_deg = number(value, "fov");
    else if (key == "near") c.near = number(value, "near");
    else if (key == "far") c.far = number(value, "far");
    else if (key == "from") continue;
    else if (key == "ortho") {
      c.projection = npr::Projection::Orthographic;
      c.ortho_half_height = number(value, "ortho");
    } else if (key == "size") {
      const auto x = value.find('x');
      if (x == std::string::npos) bad("size must be WxH");
      const double w = number(value.substr(0, x), "size"), h = number(value.substr(x + 1), "size");
      if (w != std::floor(w) || h != std::floor(h) || w < 1 || h < 1 || w > 16384 || h > 16384)
        bad("size must be two positive integers");
      c.width = static_cast<int>(w);
      c.height = static_cast<int>(h);
    } else {
      bad("unknown camera key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

npr::Camera resolve_camera(const std::string& text, const npr::BoundingSphere& bounds) {
  // Size, fov and direction first, so framing can use them.
  const npr::Camera sized = parse_camera(text, npr::Camera{});
  if (text.find("eye=") != std::string::npos) return sized;
  npr::Vec3 from(0.3, 0.4, 1.0);
  for (const std::string& item : split(text, ';'))
    if (item.rfind("from=", 0) == 0) from = vec3_text(item.substr(5), "from");
  if (!(from.norm() > 0.0)) bad("from must be a nonzero direction");
  npr::Camera framed = npr::Camera::framing(bounds, sized.width, sized.height, from, sized.fov_deg);
  return parse_camera(text, framed);
}

npr::PassGraph parse_pass_graph(const json& j, const npr::ShaderConfig& default_shader,
                                const npr::Material& material, const npr::LineStyle& line) {
  npr::PassGraph g;
  g.passes = parse_passes(j, default_shader, material, line);
  return g;
}

void apply_json(RenderConfig& c, const json& j) {
  check_keys(j, {"input", "camera", "style", "shader", "contours", "suggestive", "line", "passes", "background",
                 "edges", "edge_gain", "output", "animation", "time", "time_range", "frames", "output_dir",
                 "svg_frames", "radius", "field_iterations", "atlas_size"},
             "config");
  if (j.contains("input")) c.input = get<std::string>(j.at("input"), "input");
  if (j.contains("camera")) c.camera = get<std::string>(j.at("camera"), "camera");
  if (j.contains("style")) c.style = get<std::string>(j.at("style"), "style");
  if (j.contains("shader")) c.shader = j.at("shader");
  if (j.contains("contours")) c.contours = string_list(j.at("contours"), "contours");
  if (j.contains("suggestive")) {
    const json& s = j.at("suggestive");
    check_keys(s, {"derivative", "angle_deg"}, "suggestive");
    if (s.contains("derivative")) c.suggestive.derivative = get<double>(s.at("derivative"), "derivative");
    if (s.contains("angle_deg")) c.suggestive.angle_deg = get<double>(s.at("angle_deg"), "angle_deg");
  }
  if (j.contains("line")) c.line = parse_line_style(j.at("line"), c.line);
  if (j.contains("passes")) c.passes = j.at("passes");
  if (j.contains("background")) c.background = vec3_json(j.at("background"), "background");
  if (j.contains("edges")) c.edges = get<bool>(j.at("edges"), "edges");
  if (j.contains("edge_gain")) c.edge_gain = get<double>(j.at("edge_gain"), "edge_gain");
  if (j.contains("output")) c.outputs = string_list(j.at("output"), "output");
  if (j.contains("animation")) c.animation = get<std::string>(j.at("animation"), "animation");
  if (j.contains("time")) c.time = get<double>(j.at("time"), "time");
  if (j.contains("time_range")) {
    const auto r = get<std::vector<double>>(j.at("time_range"), "time_range");
    if (r.size() != 2) bad("time_range must be [start, end]");
    c.t0 = r[0];
    c.t1 = r[1];
  }
  if (j.contains("frames")) c.frames = get<int>(j.at("frames"), "frames");
  if (j.contains("output_dir")) c.output_dir = get<std::string>(j.at("output_dir"), "output_dir");
  if (j.contains("svg_frames")) c.svg_frames = get<bool>(j.at("svg_frames"), "svg_frames");
  if (j.contains("radius")) c.radius = get<double>(j.at("radius"), "radius");
  if (j.contains("field_iterations")) c.field_iterations = get<int>(j.at("field_iterations"), "field_iterations");
  if (j.contains("atlas_size")) c.atlas_size = get<int>(j.at("atlas_size"), "atlas_size");
}

RenderConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "config '" + path.string() + "': " + e.what());
  }
  RenderConfig c;
  apply_json(c, j);
  return c;
}

}  // namespace nprcli
