#include "npr/framebuffer.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "npr/error.hpp"

namespace npr {

Framebuffer::Framebuffer(int width, int height, const Color& clear_color)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0)
    throw Error(ErrorCode::InvalidConfig, "framebuffer dimensions must be positive");
  color_.resize(static_cast<std::size_t>(width) * height);
  depth_.resize(color_.size());
  clear(clear_color);
  clear_depth();
}

void Framebuffer::clear(const Color& c) {
  const Rgba v(static_cast<float>(c.x()), static_cast<float>(c.y()), static_cast<float>(c.z()), 1.0f);
  std::fill(color_.begin(), color_.end(), v);
}

void Framebuffer::clear_depth() {
  std::fill(depth_.begin(), depth_.end(), std::numeric_limits<float>::infinity());
}

std::uint8_t to_byte(float value) {
  const float c = std::min(std::max(value, 0.0f), 1.0f);
  return static_cast<std::uint8_t>(std::floor(c * 255.0f + 0.5f));
}

ImageBuffer Framebuffer::to_image(int channels) const {
  ImageBuffer img(width_, height_, channels);
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x)
      for (int c = 0; c < channels; ++c) img.at(x, y, c) = to_byte(color(x, y)[c]);
  return img;
}

Framebuffer Framebuffer::from_image(const ImageBuffer& image) {
  Framebuffer fb(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x) {
      Rgba& px = fb.color(x, y);
      for (int c = 0; c < 3; ++c) px[c] = image.at(x, y, c) / 255.0f;
      px[3] = image.channels() == 4 ? image.at(x, y, 3) / 255.0f : 1.0f;
    }
  return fb;
}

bool Framebuffer::operator==(const Framebuffer& other) const {
  if (width_ != other.width_ || height_ != other.height_) return false;
  for (std::size_t i = 0; i < color_.size(); ++i)
    if (color_[i] != other.color_[i]) return false;
  // Bitwise comparison so that +inf == +inf and NaN patterns are compared as stored.
  return std::equal(depth_.begin(), depth_.end(), other.depth_.begin(), [](float a, float b) {
    return std::memcmp(&a, &b, sizeof(float)) == 0;
  });
}

}  // namespace npr
