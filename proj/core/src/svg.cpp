#include "npr/svg.hpp"

#include <cstdio>
#include <sstream>

#include "npr/framebuffer.hpp"

namespace npr {
namespace {

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string hex_color(const Color& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", to_byte(static_cast<float>(c.x())),
                to_byte(static_cast<float>(c.y())), to_byte(static_cast<float>(c.z())));
  return buf;
}

std::string path_data(const std::vector<ScreenPoint>& pts, bool closed) {
  const std::size_t n = pts.size();
  std::size_t start = 0;
  bool gaps = false;
  for (std::size_t i = 0; i < n; ++i)
    if (pts[i].clipped) {
      gaps = true;
      start = (i + 1) % n;
    }
  std::string d;
  bool pen_down = false;
  for (std::size_t k = 0; k < n; ++k) {
    const ScreenPoint& p = pts[(closed ? start + k : k) % n];
    if (p.clipped) {
      pen_down = false;
      continue;
    }
    if (!d.empty()) d += ' ';
    d += pen_down ? "L " : "M ";
    d += fixed3(p.x) + ' ' + fixed3(p.y);
    pen_down = true;
  }
  if (closed && !gaps && !d.empty()) d += " Z";
  return d;
}

}  // namespace

std::string export_svg(const std::vector<const ContourSet*>& sets, const Camera& camera,
                       const std::vector<LineStyle>& styles) {
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << camera.width
    << "\" height=\"" << camera.height << "\" viewBox=\"0 0 " << camera.width << ' ' << camera.height
    << "\">\n";
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const LineStyle& style = styles.at(i);
    const ContourSet& set = *sets[i];
    s << "<g id=\"" << (set.name.empty() ? "contours" : set.name) << "\" fill=\"none\" stroke=\""
      << hex_color(style.color) << "\" stroke-width=\"" << fixed3(style.width)
      << "\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n";
    for (const Polyline& line : set.polylines)
      s << "<path d=\"" << path_data(project_polyline(line, camera, style), line.closed) << "\"/>\n";
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string export_svg(const ContourSet& contours, const Camera& camera, const LineStyle& style) {
  return export_svg(std::vector<const ContourSet*>{&contours}, camera, std::vector<LineStyle>{style});
}

}  // namespace npr
