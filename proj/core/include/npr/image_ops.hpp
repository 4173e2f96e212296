#pragma once

#include <array>
#include <functional>
#include <variant>

#include "npr/framebuffer.hpp"
#include "npr/error.hpp"
#include "npr/image.hpp"

namespace npr {

/// Row-major 3x3 kernel; element [1 + dy][1 + dx] weights the neighbor at (x + dx, y + dy).
using Kernel3 = std::array<double, 9>;

namespace kernels {
inline constexpr Kernel3 identity{0, 0, 0, 0, 1, 0, 0, 0, 0};
inline constexpr Kernel3 sobel_x{-1, 0, 1, -2, 0, 2, -1, 0, 1};
inline constexpr Kernel3 sobel_y{-1, -2, -1, 0, 0, 0, 1, 2, 1};
inline constexpr Kernel3 box{1.0 / 9, 1.0 / 9, 1.0 / 9, 1.0 / 9, 1.0 / 9,
                             1.0 / 9, 1.0 / 9, 1.0 / 9, 1.0 / 9};
}  // namespace kernels

/// Per-channel RGB convolution with clamp-to-edge borders. Alpha and depth
/// are copied. No clamping of the result.
Framebuffer convolve(const Framebuffer& input, const Kernel3& kernel);
/// Same on 8-bit data; results are clamped and rounded half up.
ImageBuffer convolve(const ImageBuffer& input, const Kernel3& kernel);

/// Per-channel gradient magnitude sqrt(gx^2 + gy^2) of the Sobel operators.
Framebuffer sobel_magnitude(const Framebuffer& input);

using PixelFunction = std::function<Rgba(const Rgba&)>;
Framebuffer map_pixels(const Framebuffer& input, const PixelFunction& fn);

/// An image-space operator usable as a render pass.
struct ConvolutionOp {
  Kernel3 kernel = kernels::identity;
};
struct SobelOp {};
/// Optional edge-darkening: 1 - clamp(gain * max(r, g, b)) in every channel.
struct EdgeMaskOp {
  double gain = 1.0;
};
struct PixelOp {
  PixelFunction fn;
};
using ImageOp = std::variant<ConvolutionOp, SobelOp, EdgeMaskOp, PixelOp>;

Framebuffer apply_image_op(const ImageOp& op, const Framebuffer& input);

}  // namespace npr
