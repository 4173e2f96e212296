#include "npr/image.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

#include "npr/error.hpp"

namespace npr {

ImageBuffer::ImageBuffer(int width, int height, int channels)
    : width_(width), height_(height), channels_(channels) {
  if (channels != 3 && channels != 4)
    throw Error(ErrorCode::InvalidConfig, "image channel count must be 3 or 4");
  if (width < 0 || height < 0) throw Error(ErrorCode::InvalidConfig, "negative image size");
  data_.assign(static_cast<std::size_t>(width) * height * channels, 0);
}

void write_ppm(const ImageBuffer& image, std::ostream& out) {
  out << "P6\n" << image.width() << ' ' << image.height() << "\n255\n";
  if (image.channels() == 3) {
    out.write(reinterpret_cast<const char*>(image.data().data()),
              static_cast<std::streamsize>(image.data().size()));
  } else {
    std::vector<std::uint8_t> rgb;
    rgb.reserve(static_cast<std::size_t>(image.width()) * image.height() * 3);
    for (int y = 0; y < image.height(); ++y)
      for (int x = 0; x < image.width(); ++x)
        for (int c = 0; c < 3; ++c) rgb.push_back(image.at(x, y, c));
    out.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing PPM data");
}

void write_ppm(const ImageBuffer& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  write_ppm(image, out);
}

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& in) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  return token;
}

int header_int(std::istream& in, const char* what) {
  const std::string t = header_token(in);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(1, std::string("bad PPM ") + what + " '" + t + "'");
  return std::stoi(t);
}

}  // namespace

ImageBuffer read_ppm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P') throw ParseError(1, "not a PPM file");
  if (magic[1] != '6') throw ParseError(1, std::string("unsupported variant P") + magic[1]);
  const int width = header_int(in, "width");
  const int height = header_int(in, "height");
  // header_int consumed exactly one whitespace byte after maxval.
  const int maxval = header_int(in, "maxval");
  if (maxval != 255)
    throw Error(ErrorCode::UnsupportedMaxval, "maxval " + std::to_string(maxval));
  ImageBuffer image(width, height, 3);
  in.read(reinterpret_cast<char*>(image.data().data()),
          static_cast<std::streamsize>(image.data().size()));
  if (in.gcount() != static_cast<std::streamsize>(image.data().size()))
    throw ParseError(1, "truncated PPM pixel data");
  return image;
}

ImageBuffer read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return read_ppm(in);
}

}  // namespace npr
