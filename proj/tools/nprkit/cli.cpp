#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "config.hpp"
#include "npr/curvature.hpp"
#include "npr/io.hpp"
#include "npr/lapped.hpp"
#include "npr/log.hpp"
#include "npr/serialize.hpp"
#include "npr/svg.hpp"

namespace nprcli {

using npr::Error;
using npr::ErrorCode;

namespace {

namespace fs = std::filesystem;

std::string extension(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  for (char& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return ext;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

template <class Fn>
void write_stream(const fs::path& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  fn(out);
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

void require_outputs(const RenderConfig& c, std::initializer_list<const char*> allowed, const char* command) {
  if (c.outputs.empty()) throw Error(ErrorCode::InvalidConfig, std::string(command) + " needs an output (-o)");
  for (const std::string& out : c.outputs) {
    const std::string ext = extension(out);
    bool ok = false;
    std::string list;
    for (const char* a : allowed) {
      ok = ok || ext == a;
      list += std::string(list.empty() ? "" : ", ") + a;
    }
    if (!ok) throw Error(ErrorCode::InvalidConfig, std::string(command) + " writes " + list + ", not '" + out + "'");
  }
}

/// The loaded input plus the deformation it supports.
class Scene {
 public:
  explicit Scene(const std::string& input) {
    if (input.empty()) throw Error(ErrorCode::InvalidConfig, "no input file given");
    loaded_ = npr::LoaderRegistry::with_defaults().load(input);
  }

  const npr::Surface& surface() const {
    return std::visit(
        [](const auto& s) -> const npr::Surface& {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, npr::Surface>) return s;
          else return s.surface;
        },
        loaded_);
  }

  bool animated() const { return !std::holds_alternative<npr::Surface>(loaded_); }

  std::string default_animation() const {
    if (const auto* v = std::get_if<npr::VertexAnimatedSurface>(&loaded_)) {
      for (const auto& [name, range] : v->animations)
        if (range.first == 0) return name;
      if (!v->animations.empty()) return v->animations.begin()->first;
    }
    if (const auto* s = std::get_if<npr::SkinnedSurface>(&loaded_))
      if (!s->animations.empty()) return s->animations.front().name;
    throw Error(ErrorCode::NotAnimated, "input is not animated");
  }

  /// Default time range of an animation: all keyframes, or the key span.
  std::pair<double, double> time_range(const std::string& name) const {
    if (const auto* v = std::get_if<npr::VertexAnimatedSurface>(&loaded_))
      return {0.0, static_cast<double>(v->animation(name).count - 1)};
    if (const auto* s = std::get_if<npr::SkinnedSurface>(&loaded_)) {
      const auto& a = s->animation(name);
      return {a.start_time(), a.end_time()};
    }
    throw Error(ErrorCode::NotAnimated, "input is not animated");
  }

  npr::MeshState state(const std::string& animation, double t) const {
    if (const auto* v = std::get_if<npr::VertexAnimatedSurface>(&loaded_))
      return npr::interpolate_keyframes(*v, animation.empty() ? default_animation() : animation, t);
    if (const auto* s = std::get_if<npr::SkinnedSurface>(&loaded_)) {
      const auto& anim = s->animation(animation.empty() ? default_animation() : animation);
      npr::MeshState st = npr::skin_vertices(*s, npr::pose_skeleton(s->skeleton, anim, t));
      st.time = t;
      return st;
    }
    return npr::static_state(std::get<npr::Surface>(loaded_));
  }

 private:
  npr::LoadedSurface loaded_;
};

npr::CurvatureField curvature_of(const npr::Surface& surface, const npr::MeshState& state) {
  npr::CurvatureField field = npr::estimate_curvature(surface, state);
  npr::estimate_curvature_derivative(surface, state, field);
  return field;
}

std::vector<npr::ContourSet> extract_requested(const RenderConfig& c, const npr::Surface& surface,
                                               const npr::MeshState& state, const npr::Camera& camera) {
  std::vector<npr::ContourSet> sets;
  std::optional<npr::CurvatureField> curvature;
  for (const std::string& name : c.contours) {
    if (name == "silhouette") {
      sets.push_back(npr::extract_silhouettes(surface, state, camera));
    } else if (name == "suggestive") {
      if (!curvature) {
        npr::log::info("computing curvature for suggestive contours");
        curvature = curvature_of(surface, state);
      }
      sets.push_back(npr::extract_suggestive(surface, state, *curvature, camera, c.suggestive));
    } else {
      throw Error(ErrorCode::InvalidConfig, "unknown contour '" + name + "' (silhouette, suggestive)");
    }
  }
  return sets;
}

std::vector<const npr::ContourSet*> pointers(const std::vector<npr::ContourSet>& sets) {
  std::vector<const npr::ContourSet*> out;
  for (const auto& s : sets) out.push_back(&s);
  return out;
}

struct Frame {
  npr::Framebuffer image;
  std::vector<npr::ContourSet> contours;
};

Frame render_frame(const RenderConfig& c, const npr::Surface& surface, const npr::MeshState& state,
                   const npr::Camera& camera) {
  Frame frame;
  frame.contours = extract_requested(c, surface, state, camera);

  const bool no_surface = c.style == "none";
  const npr::ShaderConfig shader =
      no_surface ? npr::ShaderConfig{npr::FlatShader{}} : make_shader(c.style, c.shader, surface.material());
  npr::PassGraph graph;
  if (!c.passes.is_null()) {
    graph = parse_pass_graph(c.passes, shader, surface.material(), c.line);
  } else {
    if (!no_surface) graph.passes.push_back({npr::SurfacePass{shader, {}}});
    if (c.edges) {
      graph.passes.push_back({npr::SurfacePass{npr::NormalShader{}, {}}, "edge_normals"});
      graph.passes.push_back({npr::ImagePass{"edge_normals", npr::EdgeMaskOp{c.edge_gain}, npr::BlendMode::Multiply}});
    }
    for (const auto& set : frame.contours) graph.passes.push_back({npr::LinePass{set.name, c.line}});
  }
  graph.background = c.background;

  npr::SceneInputs scene{&surface, &state, camera, {}};
  for (const auto& set : frame.contours) scene.contours[set.name] = set;
  frame.image = npr::run_pass_graph(graph, scene);
  return frame;
}

void write_frame(const Frame& frame, const npr::Camera& camera, const npr::LineStyle& line,
                 const std::string& path) {
  if (extension(path) == ".ppm") {
    npr::write_ppm(frame.image.to_image(), fs::path(path));
  } else {
    const std::vector<npr::LineStyle> styles(frame.contours.size(), line);
    write_text(path, npr::export_svg(pointers(frame.contours), camera, styles));
  }
  npr::log::info("wrote " + path);
}

int cmd_render(const RenderConfig& c) {
  require_outputs(c, {".ppm", ".svg"}, "render");
  const Scene scene(c.input);
  const npr::Camera camera = resolve_camera(c.camera, scene.surface().bounding_sphere());
  const npr::MeshState state = scene.state(c.animation, c.time);
  const Frame frame = render_frame(c, scene.surface(), state, camera);
  for (const std::string& out : c.outputs) write_frame(frame, camera, c.line, out);
  return 0;
}

int cmd_animate(const RenderConfig& c) {
  if (c.frames < 1) throw Error(ErrorCode::InvalidConfig, "frame count must be at least 1");
  const Scene scene(c.input);
  if (!scene.animated()) throw Error(ErrorCode::NotAnimated, "input is not animated");
  const std::string anim = c.animation.empty() ? scene.default_animation() : c.animation;
  const auto range = scene.time_range(anim);
  const double t0 = c.t0.value_or(range.first), t1 = c.t1.value_or(range.second);
  // Framing uses the undeformed surface so every frame shares one camera.
  const npr::Camera camera = resolve_camera(c.camera, scene.surface().bounding_sphere());
  fs::create_directories(c.output_dir);
  for (int i = 0; i < c.frames; ++i) {
    const double t = c.frames == 1 ? t0 : t0 + (t1 - t0) * i / (c.frames - 1);
    const npr::MeshState state = scene.state(anim, t);
    const Frame frame = render_frame(c, scene.surface(), state, camera);
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04d", i);
    write_frame(frame, camera, c.line, (fs::path(c.output_dir) / (std::string(name) + ".ppm")).string());
    if (c.svg_frames)
      write_frame(frame, camera, c.line, (fs::path(c.output_dir) / (std::string(name) + ".svg")).string());
  }
  return 0;
}

int cmd_curvature(const RenderConfig& c) {
  require_outputs(c, {".csv"}, "curvature");
  const Scene scene(c.input);
  const npr::CurvatureField field = curvature_of(scene.surface(), scene.state(c.animation, c.time));
  for (const std::string& out : c.outputs)
    write_stream(out, [&](std::ostream& s) { npr::write_curvature_csv(field, s); });
  return 0;
}

int cmd_contours(const RenderConfig& c) {
  require_outputs(c, {".json", ".svg"}, "contours");
  const Scene scene(c.input);
  const npr::Camera camera = resolve_camera(c.camera, scene.surface().bounding_sphere());
  const npr::MeshState state = scene.state(c.animation, c.time);
  const auto sets = extract_requested(c, scene.surface(), state, camera);
  for (const std::string& out : c.outputs) {
    if (extension(out) == ".json") {
      write_stream(out, [&](std::ostream& s) { npr::write_contours_json(pointers(sets), s); });
    } else {
      const std::vector<npr::LineStyle> styles(sets.size(), c.line);
      write_text(out, npr::export_svg(pointers(sets), camera, styles));
    }
  }
  return 0;
}

int cmd_lapped(const RenderConfig& c) {
  require_outputs(c, {".json", ".ppm"}, "lapped");
  const Scene scene(c.input);
  const npr::Surface& surface = scene.surface();
  const double radius = c.radius.value_or(0.25 * surface.bounding_sphere().radius);
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidConfig, "patch radius must be positive");
  if (c.field_iterations < 0) throw Error(ErrorCode::InvalidConfig, "field iterations must be >= 0");
  const npr::CurvatureField curvature = npr::estimate_curvature(surface, npr::static_state(surface));
  const npr::TangentField field = npr::build_tangent_field(surface, curvature, c.field_iterations);
  const auto patches = npr::cover_surface(surface, field, radius);
  npr::log::info(std::to_string(patches.size()) + " patches");
  for (const std::string& out : c.outputs) {
    if (extension(out) == ".json") {
      write_stream(out, [&](std::ostream& s) { npr::write_patches_json(patches, s); });
    } else {
      if (c.atlas_size < 16) throw Error(ErrorCode::InvalidConfig, "atlas size must be at least 16");
      npr::write_ppm(npr::render_uv_atlas(patches, c.atlas_size), fs::path(out));
    }
  }
  return 0;
}

/// Value of --config if present; flags are applied on top of the file.
std::optional<std::string> find_config(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return std::nullopt;
}

int exit_code(const Error& e) {
  switch (npr::category(e.code())) {
    case npr::ErrorCategory::Config: return 2;
    case npr::ErrorCategory::Io: return 3;
    case npr::ErrorCategory::Numeric: return 4;
  }
  return 1;
}

// Flag values that need conversion after parsing.
struct Pending {
  std::optional<std::string> smoothing, line_color, background;
  bool no_aa = false;
  std::optional<std::vector<double>> range;
};

void add_input_options(CLI::App& cmd, RenderConfig& c) {
  cmd.add_option("input", c.input, "Mesh file (.obj, .md2, .zskin)");
  cmd.add_option("-o,--output", c.outputs, "Output file(s); the extension selects the format");
}

void add_time_options(CLI::App& cmd, RenderConfig& c) {
  cmd.add_option("--animation", c.animation, "Animation name (animated inputs)");
  cmd.add_option("--time", c.time, "Animation time (animated inputs)");
}

void add_view_options(CLI::App& cmd, RenderConfig& c, Pending& p) {
  cmd.add_option("--camera", c.camera, "eye=x,y,z;target=x,y,z;up=x,y,z;fov=deg;size=WxH;ortho=h;near=n;far=f");
  cmd.add_option("--contours", c.contours, "Contours to extract: silhouette, suggestive")->delimiter(',');
  cmd.add_option("--td", c.suggestive.derivative, "Suggestive derivative threshold t_d");
  cmd.add_option("--theta", c.suggestive.angle_deg, "Suggestive grazing-angle threshold in degrees");
  cmd.add_option("--smoothing", p.smoothing, "Line smoothing: none, catmull-rom, b-spline");
  cmd.add_option("--samples", c.line.samples, "Spline samples per segment");
  cmd.add_option("--line-width", c.line.width, "Stroke width in pixels");
  cmd.add_option("--line-color", p.line_color, "Stroke color r,g,b");
}

void add_style_options(CLI::App& cmd, RenderConfig& c, Pending& p) {
  cmd.add_option("--style", c.style, "Surface style: phong, gooch, toon, normal, flat, none");
  cmd.add_option("--levels", [&c](const CLI::results_t& r) {
       int levels = 0;
       if (!CLI::detail::lexical_cast(r.at(0), levels)) return false;
       c.shader["levels"] = levels;
       return true;
     }, "Toon shading levels")->type_size(1)->type_name("INT");
  cmd.add_flag("--no-aa", p.no_aa, "Draw aliased lines");
  cmd.add_option("--depth-bias", c.line.depth_bias, "Line depth bias in normalized depth");
  cmd.add_option("--background", p.background, "Background color r,g,b");
  cmd.add_flag("--edges", c.edges, "Add an image-space edge pass over the shading");
}

}  // namespace

int run(int argc, const char* const* argv) {
  RenderConfig config;
  Pending pending;
  try {
    if (const auto path = find_config(argc, argv)) config = load_config(*path);

    CLI::App app{"Non-photorealistic rendering toolkit", "nprkit"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    bool verbose = false;
    app.add_option("--config", config_path, "JSON config; command-line flags override its values");
    app.add_flag("-v,--verbose", verbose, "Log progress");

    auto* render = app.add_subcommand("render", "Render one frame to PPM and/or SVG");
    add_input_options(*render, config);
    add_time_options(*render, config);
    add_view_options(*render, config, pending);
    add_style_options(*render, config, pending);

    auto* animate = app.add_subcommand("animate", "Render frame_NNNN.ppm for N time samples");
    add_input_options(*animate, config);
    animate->add_option("--animation", config.animation, "Animation name");
    animate->add_option("--frames", config.frames, "Number of frames");
    animate->add_option("--range", pending.range, "Time range start,end")->delimiter(',')->expected(2);
    animate->add_option("--outdir", config.output_dir, "Directory for the frames");
    animate->add_flag("--svg", config.svg_frames, "Also write frame_NNNN.svg");
    add_view_options(*animate, config, pending);
    add_style_options(*animate, config, pending);

    auto* curvature = app.add_subcommand("curvature", "Write per-vertex curvature as CSV");
    add_input_options(*curvature, config);
    add_time_options(*curvature, config);

    auto* contours = app.add_subcommand("contours", "Write contour polylines as JSON and/or SVG");
    add_input_options(*contours, config);
    add_time_options(*contours, config);
    add_view_options(*contours, config, pending);

    auto* lapped = app.add_subcommand("lapped", "Write lapped patches as JSON and a UV atlas PPM");
    add_input_options(*lapped, config);
    lapped->add_option("--radius", config.radius, "Patch half-size in model units");
    lapped->add_option("--iterations", config.field_iterations, "Tangent field smoothing rounds");
    lapped->add_option("--atlas-size", config.atlas_size, "Atlas image size in pixels");

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? 0 : 2;
    }

    npr::log::set_verbose(verbose);
    if (pending.smoothing) config.line.smoothing = parse_smoothing(*pending.smoothing);
    if (pending.line_color) config.line.color = parse_color(*pending.line_color);
    if (pending.background) config.background = parse_color(*pending.background);
    if (pending.no_aa) config.line.antialias = false;
    if (pending.range) {
      config.t0 = (*pending.range)[0];
      config.t1 = (*pending.range)[1];
    }
    config.line.validate();

    if (render->parsed()) return cmd_render(config);
    if (animate->parsed()) return cmd_animate(config);
    if (curvature->parsed()) return cmd_curvature(config);
    if (contours->parsed()) return cmd_contours(config);
    if (lapped->parsed()) return cmd_lapped(config);
    return 2;
  } catch (const Error& e) {
    std::cerr << "nprkit: " << e.what() << '\n';
    return exit_code(e);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "nprkit: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "nprkit: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace nprcli
