#pragma once

#include <limits>
#include <vector>

#include <Eigen/Core>

#include "npr/image.hpp"
#include "npr/math.hpp"

namespace npr {

using Rgba = Eigen::Vector4f;

/// Float RGBA color plus float depth (cleared to +infinity).
class Framebuffer {
 public:
  Framebuffer() = default;
  Framebuffer(int width, int height, const Color& clear_color = Color(1.0, 1.0, 1.0));

  int width() const { return width_; }
  int height() const { return height_; }

  void clear(const Color& color);
  void clear_depth();

  Rgba& color(int x, int y) { return color_[index(x, y)]; }
  const Rgba& color(int x, int y) const { return color_[index(x, y)]; }
  float& depth(int x, int y) { return depth_[index(x, y)]; }
  float depth(int x, int y) const { return depth_[index(x, y)]; }

  const std::vector<Rgba>& colors() const { return color_; }
  const std::vector<float>& depths() const { return depth_; }

  /// 8-bit RGB (or RGBA) with clamping and round-half-up.
  ImageBuffer to_image(int channels = 3) const;
  /// Color from an 8-bit image; depth cleared.
  static Framebuffer from_image(const ImageBuffer& image);

  bool operator==(const Framebuffer& other) const;

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  int width_ = 0;
  int height_ = 0;
  std::vector<Rgba> color_;
  std::vector<float> depth_;
};

/// Channel value in [0,1] to a byte, rounding half up.
std::uint8_t to_byte(float value);

}  // namespace npr
