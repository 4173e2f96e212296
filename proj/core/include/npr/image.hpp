#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace npr {

/// 8-bit RGB or RGBA raster, row-major with the origin at the top-left.
class ImageBuffer {
 public:
  ImageBuffer() = default;
  /// Throws InvalidConfig for channel counts other than 3 or 4.
  ImageBuffer(int width, int height, int channels = 3);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::vector<std::uint8_t>& data() { return data_; }
  const std::vector<std::uint8_t>& data() const { return data_; }

  std::uint8_t& at(int x, int y, int c) { return data_[index(x, y) + c]; }
  std::uint8_t at(int x, int y, int c) const { return data_[index(x, y) + c]; }

  bool operator==(const ImageBuffer&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 3;
  std::vector<std::uint8_t> data_;
};

/// Binary P6 with maxval 255. RGBA buffers are written without alpha.
void write_ppm(const ImageBuffer& image, std::ostream& out);
void write_ppm(const ImageBuffer& image, const std::filesystem::path& path);

/// Reads binary P6 (maxval 255) into an RGB buffer. ParseError on other
/// variants or malformed headers, UnsupportedMaxval for maxval != 255.
ImageBuffer read_ppm(std::istream& in);
ImageBuffer read_ppm(const std::filesystem::path& path);

}  // namespace npr
