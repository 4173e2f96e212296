#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "npr/animation.hpp"
#include "npr/camera.hpp"
#include "npr/contours.hpp"
#include "npr/framebuffer.hpp"
#include "npr/image_ops.hpp"
#include "npr/lines.hpp"
#include "npr/raster.hpp"
#include "npr/shading.hpp"

namespace npr {

inline constexpr const char* kScreen = "screen";

/// Rasterizes the scene surface into the target.
struct SurfacePass {
  ShaderConfig shader;
  RasterOptions options;
};

enum class BlendMode { Replace, Multiply };

/// Applies an image operator to a slot written by an earlier pass.
struct ImagePass {
  std::string input;
  ImageOp op;
  BlendMode blend = BlendMode::Replace;
};

/// Draws a named contour set from the scene.
struct LinePass {
  std::string contours;
  LineStyle style;
};

struct RenderPass;

/// Passes run in order and share the enclosing slot namespace.
struct CompositePass {
  std::vector<RenderPass> passes;
};

struct RenderPass {
  std::variant<SurfacePass, ImagePass, LinePass, CompositePass> kind;
  std::string target = kScreen;
};

struct PassGraph {
  std::vector<RenderPass> passes;
  Color background{1.0, 1.0, 1.0};
};

struct SceneInputs {
  const Surface* surface = nullptr;
  const MeshState* state = nullptr;
  Camera camera;
  std::map<std::string, ContourSet> contours;
};

/// Throws UnboundTexture if a pass reads a slot no earlier pass writes and
/// InvalidConfig if nothing writes the screen.
void check_pass_graph(const PassGraph& graph);

/// Runs the passes in order; offscreen slots are allocated at viewport
/// size and cleared to the background on first use. Returns the screen.
Framebuffer run_pass_graph(const PassGraph& graph, const SceneInputs& scene);

}  // namespace npr
