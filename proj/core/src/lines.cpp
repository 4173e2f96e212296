#include "npr/lines.hpp"

#include <algorithm>
#include <cmath>

namespace npr {
namespace {

// Per-polyline coverage so that joints are not blended twice.
class CoverageMask {
 public:
  CoverageMask(int width, int height)
      : width_(width), height_(height), cov_(static_cast<std::size_t>(width) * height, 0.0f),
        depth_(cov_.size(), 0.0f) {}

  void add(int x, int y, float coverage, float depth) {
    if (x < 0 || y < 0 || x >= width_ || y >= height_ || !(coverage > 0.0f)) return;
    const std::size_t i = static_cast<std::size_t>(y) * width_ + x;
    if (cov_[i] == 0.0f) {
      touched_.push_back(i);
      depth_[i] = depth;
    } else {
      depth_[i] = std::min(depth_[i], depth);
    }
    cov_[i] = std::max(cov_[i], std::min(coverage, 1.0f));
  }

  void resolve(Framebuffer& fb, const Color& color, double bias) {
    std::sort(touched_.begin(), touched_.end());
    const Eigen::Vector3f c = color.cast<float>();
    for (std::size_t i : touched_) {
      const int x = static_cast<int>(i % width_), y = static_cast<int>(i / width_);
      if (static_cast<double>(depth_[i]) <= static_cast<double>(fb.depth(x, y)) + bias) {
        Rgba& px = fb.color(x, y);
        const float a = cov_[i];
        px.head<3>() = px.head<3>() * (1.0f - a) + c * a;
        px[3] = 1.0f;
      }
      cov_[i] = 0.0f;
    }
    touched_.clear();
  }

 private:
  int width_, height_;
  std::vector<float> cov_;
  std::vector<float> depth_;
  std::vector<std::size_t> touched_;
};

void aliased(CoverageMask& mask, const ScreenPoint& a, const ScreenPoint& b, double width) {
  const int wi = std::max(1, static_cast<int>(std::lround(width)));
  const int lo = -(wi - 1) / 2, hi = wi / 2;
  const double dx = b.x - a.x, dy = b.y - a.y;
  auto plot = [&](int x, int y, double depth, bool x_major) {
    for (int k = lo; k <= hi; ++k) {
      if (x_major) mask.add(x, y + k, 1.0f, static_cast<float>(depth));
      else mask.add(x + k, y, 1.0f, static_cast<float>(depth));
    }
  };
  if (dx == 0.0 && dy == 0.0) {
    plot(static_cast<int>(std::floor(a.x)), static_cast<int>(std::floor(a.y)), a.depth, true);
    return;
  }
  const bool x_major = std::abs(dx) >= std::abs(dy);
  const double a_major = x_major ? a.x : a.y, b_major = x_major ? b.x : b.y;
  const double d_major = x_major ? dx : dy, d_minor = x_major ? dy : dx;
  const double a_minor = x_major ? a.y : a.x;
  const int first = static_cast<int>(std::ceil(std::min(a_major, b_major) - 0.5));
  const int last = static_cast<int>(std::floor(std::max(a_major, b_major) - 0.5));
  for (int i = first; i <= last; ++i) {
    const double t = (i + 0.5 - a_major) / d_major;
    const int j = static_cast<int>(std::floor(a_minor + t * d_minor));
    const double depth = a.depth + t * (b.depth - a.depth);
    if (x_major) plot(i, j, depth, true);
    else plot(j, i, depth, false);
  }
}

void antialiased(CoverageMask& mask, const ScreenPoint& a, const ScreenPoint& b, double width,
                 int fb_width, int fb_height) {
  const double r = 0.5 * width + 1.0;
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - r)));
  const int x1 = std::min(fb_width - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + r)));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - r)));
  const int y1 = std::min(fb_height - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + r)));
  const Vec2 pa(a.x, a.y), ab(b.x - a.x, b.y - a.y);
  const double len2 = ab.squaredNorm();
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) {
      const Vec2 p(x + 0.5, y + 0.5);
      const double t = len2 > 0.0 ? std::clamp((p - pa).dot(ab) / len2, 0.0, 1.0) : 0.0;
      const double dist = (p - (pa + t * ab)).norm();
      const double cov = std::clamp(0.5 * width + 0.5 - dist, 0.0, 1.0);
      mask.add(x, y, static_cast<float>(cov), static_cast<float>(a.depth + t * (b.depth - a.depth)));
    }
}

}  // namespace

void LineStyle::validate() const {
  if (samples < 1) throw Error(ErrorCode::InvalidConfig, "line samples must be at least 1");
  if (!(width > 0.0)) throw Error(ErrorCode::InvalidConfig, "line width must be positive");
}

std::vector<ScreenPoint> project_polyline(const Polyline& line, const Camera& camera,
                                          const LineStyle& style) {
  std::vector<Vec3> pts;
  pts.reserve(line.points.size());
  for (const ContourPoint& p : line.points) pts.push_back(p.position);
  const std::vector<Vec3> smooth = smooth_polyline(pts, line.closed, style.smoothing, style.samples);
  std::vector<ScreenPoint> out;
  out.reserve(smooth.size());
  for (const Vec3& p : smooth) out.push_back(project(camera, p));
  return out;
}

void render_lines(const ContourSet& contours, const Camera& camera, const LineStyle& style,
                  Framebuffer& target) {
  if (target.width() != camera.width || target.height() != camera.height)
    throw Error(ErrorCode::DimensionMismatch, "framebuffer size differs from the camera viewport");
  style.validate();
  CoverageMask mask(target.width(), target.height());
  for (const Polyline& line : contours.polylines) {
    const std::vector<ScreenPoint> pts = project_polyline(line, camera, style);
    const std::size_t n = pts.size();
    const std::size_t segments = line.closed ? n : n - 1;
    for (std::size_t i = 0; i < segments; ++i) {
      const ScreenPoint& a = pts[i];
      const ScreenPoint& b = pts[(i + 1) % n];
      if (a.clipped || b.clipped) continue;
      if (style.antialias) antialiased(mask, a, b, style.width, target.width(), target.height());
      else aliased(mask, a, b, style.width);
    }
    mask.resolve(target, style.color, style.depth_bias);
  }
}

void draw_segments_aliased(Framebuffer& target, std::span<const ScreenSegment> segments,
                           const Color& color, double width, double depth_bias) {
  CoverageMask mask(target.width(), target.height());
  for (const auto& [a, b] : segments) aliased(mask, a, b, width);
  mask.resolve(target, color, depth_bias);
}

}  // namespace npr
