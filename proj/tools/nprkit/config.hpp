#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "npr/contours.hpp"
#include "npr/lines.hpp"
#include "npr/pass_graph.hpp"
#include "npr/shading.hpp"

namespace nprcli {

/// Everything a command needs, filled from the config file and then from flags.
struct RenderConfig {
  std::string input;
  std::string camera;  // "eye=x,y,z;target=x,y,z;up=x,y,z;fov=deg;size=WxH;ortho=h;near=n;far=f"
  std::string style = "gooch";
  nlohmann::json shader = nlohmann::json::object();  // parameters of the style
  std::vector<std::string> contours{"silhouette"};
  npr::SuggestiveThresholds suggestive;
  npr::LineStyle line;
  nlohmann::json passes;  // optional explicit pass graph
  npr::Color background{1.0, 1.0, 1.0};
  bool edges = false;
  double edge_gain = 1.0;
  std::vector<std::string> outputs;

  // animated inputs
  std::string animation;
  double time = 0.0;
  std::optional<double> t0, t1;
  int frames = 1;
  std::string output_dir = ".";
  bool svg_frames = false;

  // lapped
  std::optional<double> radius;
  int field_iterations = 4;
  int atlas_size = 512;
};

/// Overwrites every field present in the object. Throws npr::Error(InvalidConfig).
void apply_json(RenderConfig& config, const nlohmann::json& j);
RenderConfig load_config(const std::filesystem::path& path);

npr::ShaderConfig make_shader(const std::string& style, const nlohmann::json& params,
                              const npr::Material& material);
npr::LineStyle parse_line_style(const nlohmann::json& j, npr::LineStyle base);
npr::Smoothing parse_smoothing(const std::string& name);
npr::Color parse_color(const std::string& text);

/// Applies a camera string on top of `base`. Keys absent from the string keep
/// the base values; "ortho=h" switches to an orthographic projection.
npr::Camera parse_camera(const std::string& text, const npr::Camera& base);
/// Frames the bounding sphere (size and fov from the string) unless the string
/// gives an eye position.
npr::Camera resolve_camera(const std::string& text, const npr::BoundingSphere& bounds);

/// Pass graph from its JSON description; `default_shader` is used by surface
/// passes without their own style.
npr::PassGraph parse_pass_graph(const nlohmann::json& j, const npr::ShaderConfig& default_shader,
                                const npr::Material& material, const npr::LineStyle& line);

}  // namespace nprcli
