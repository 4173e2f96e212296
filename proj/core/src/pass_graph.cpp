#include "npr/pass_graph.hpp"

#include <set>

namespace npr {
namespace {

void check_passes(const std::vector<RenderPass>& passes, std::set<std::string>& written) {
  for (const RenderPass& pass : passes) {
    if (const auto* image = std::get_if<ImagePass>(&pass.kind)) {
      if (!written.count(image->input))
        throw Error(ErrorCode::UnboundTexture, "pass reads slot '" + image->input + "' before it is written");
    }
    if (const auto* composite = std::get_if<CompositePass>(&pass.kind)) {
      check_passes(composite->passes, written);
    } else {
      written.insert(pass.target);
    }
  }
}

class Runner {
 public:
  Runner(const PassGraph& graph, const SceneInputs& scene) : graph_(graph), scene_(scene) {}

  void run(const std::vector<RenderPass>& passes) {
    for (const RenderPass& pass : passes) std::visit([&](const auto& p) { execute(p, pass.target); }, pass.kind);
  }

  Framebuffer take_screen() { return std::move(slot(kScreen)); }

 private:
  Framebuffer& slot(const std::string& name) {
    auto it = slots_.find(name);
    if (it == slots_.end())
      it = slots_.emplace(name, Framebuffer(scene_.camera.width, scene_.camera.height, graph_.background)).first;
    return it->second;
  }

  void execute(const SurfacePass& p, const std::string& target) {
    if (!scene_.surface || !scene_.state)
      throw Error(ErrorCode::InvalidConfig, "surface pass needs a surface");
    rasterize_surface(*scene_.surface, *scene_.state, scene_.camera, p.shader, slot(target), p.options);
  }

  void execute(const ImagePass& p, const std::string& target) {
    auto src = slots_.find(p.input);
    if (src == slots_.end())
      throw Error(ErrorCode::UnboundTexture, "slot '" + p.input + "' was never written");
    Framebuffer result = apply_image_op(p.op, src->second);
    const bool existing = slots_.count(target) != 0;
    Framebuffer& dst = slot(target);
    if (!existing) {
      dst = std::move(result);
      return;
    }
    for (int y = 0; y < dst.height(); ++y)
      for (int x = 0; x < dst.width(); ++x) {
        Rgba& d = dst.color(x, y);
        const Rgba& s = result.color(x, y);
        if (p.blend == BlendMode::Multiply) d.head<3>() = d.head<3>().cwiseProduct(s.head<3>());
        else d = s;
      }
  }

  void execute(const LinePass& p, const std::string& target) {
    auto it = scene_.contours.find(p.contours);
    if (it == scene_.contours.end())
      throw Error(ErrorCode::InvalidConfig, "no contour set named '" + p.contours + "'");
    render_lines(it->second, scene_.camera, p.style, slot(target));
  }

  void execute(const CompositePass& p, const std::string&) { run(p.passes); }

  const PassGraph& graph_;
  const SceneInputs& scene_;
  std::map<std::string, Framebuffer> slots_;
};

}  // namespace

void check_pass_graph(const PassGraph& graph) {
  std::set<std::string> written;
  check_passes(graph.passes, written);
  if (!written.count(kScreen)) throw Error(ErrorCode::InvalidConfig, "no pass writes the screen");
}

Framebuffer run_pass_graph(const PassGraph& graph, const SceneInputs& scene) {
  check_pass_graph(graph);
  scene.camera.validate();
  Runner runner(graph, scene);
  runner.run(graph.passes);
  return runner.take_screen();
}

}  // namespace npr
