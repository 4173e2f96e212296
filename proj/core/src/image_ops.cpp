#include "npr/image_ops.hpp"

#include <algorithm>
#include <cmath>

namespace npr {
namespace {

template <class Sample>
double convolve_at(const Kernel3& k, int x, int y, int w, int h, Sample&& sample) {
  double s = 0.0;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) {
      const double kv = k[(dy + 1) * 3 + (dx + 1)];
      if (kv == 0.0) continue;
      s += kv * sample(std::clamp(x + dx, 0, w - 1), std::clamp(y + dy, 0, h - 1));
    }
  return s;
}

}  // namespace

Framebuffer convolve(const Framebuffer& input, const Kernel3& kernel) {
  Framebuffer out = input;
  const int w = input.width(), h = input.height();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c)
        out.color(x, y)[c] = static_cast<float>(convolve_at(
            kernel, x, y, w, h, [&](int sx, int sy) { return static_cast<double>(input.color(sx, sy)[c]); }));
  return out;
}

ImageBuffer convolve(const ImageBuffer& input, const Kernel3& kernel) {
  ImageBuffer out = input;
  const int w = input.width(), h = input.height();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < std::min(3, input.channels()); ++c) {
        const double v = convolve_at(kernel, x, y, w, h,
                                     [&](int sx, int sy) { return static_cast<double>(input.at(sx, sy, c)); });
        out.at(x, y, c) = static_cast<std::uint8_t>(std::floor(std::clamp(v, 0.0, 255.0) + 0.5));
      }
  return out;
}

Framebuffer sobel_magnitude(const Framebuffer& input) {
  const Framebuffer gx = convolve(input, kernels::sobel_x);
  const Framebuffer gy = convolve(input, kernels::sobel_y);
  Framebuffer out = input;
  for (int y = 0; y < input.height(); ++y)
    for (int x = 0; x < input.width(); ++x)
      for (int c = 0; c < 3; ++c)
        out.color(x, y)[c] = std::hypot(gx.color(x, y)[c], gy.color(x, y)[c]);
  return out;
}

Framebuffer map_pixels(const Framebuffer& input, const PixelFunction& fn) {
  Framebuffer out = input;
  for (int y = 0; y < input.height(); ++y)
    for (int x = 0; x < input.width(); ++x) out.color(x, y) = fn(input.color(x, y));
  return out;
}

Framebuffer apply_image_op(const ImageOp& op, const Framebuffer& input) {
  return std::visit(
      [&](const auto& o) -> Framebuffer {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, ConvolutionOp>) {
          return convolve(input, o.kernel);
        } else if constexpr (std::is_same_v<T, SobelOp>) {
          return sobel_magnitude(input);
        } else if constexpr (std::is_same_v<T, EdgeMaskOp>) {
          const float gain = static_cast<float>(o.gain);
          return map_pixels(sobel_magnitude(input), [gain](const Rgba& p) {
            const float m = std::clamp(gain * std::max({p[0], p[1], p[2]}), 0.0f, 1.0f);
            return Rgba(1.0f - m, 1.0f - m, 1.0f - m, p[3]);
          });
        } else {
          if (!o.fn) throw Error(ErrorCode::InvalidConfig, "pixel operator has no function");
          return map_pixels(input, o.fn);
        }
      },
      op);
}

}  // namespace npr
