#include "firefight/render.hpp"

#include <stdexcept>

namespace firefight {

Box activity_window(const FireState& s, Coord pad) {
  std::vector<Point> pts(s.burnt().begin(), s.burnt().end());
  pts.insert(pts.end(), s.protected_points().begin(), s.protected_points().end());
  Box b = pts.empty() ? Box{0, 0, 0, 0} : bounding_box(pts);
  return {checked_add(b.x0, -pad), checked_add(b.y0, -pad), checked_add(b.x1, pad), checked_add(b.y1, pad)};
}

std::string render_text(const FireState& s, const Box& window) {
  if (window.x1 < window.x0 || window.y1 < window.y0) throw std::invalid_argument("empty render window");
  std::string out;
  out.reserve(static_cast<std::size_t>(window.area() + window.height()));
  for (std::int64_t y = window.y1; y >= window.y0; --y) {
    for (std::int64_t x = window.x0; x <= window.x1; ++x) {
      Point p{static_cast<Coord>(x), static_cast<Coord>(y)};
      out += s.is_burnt(p) ? '#' : s.is_protected(p) ? 'F' : '.';
    }
    out += '\n';
  }
  return out;
}

std::string render_pgm(const FireState& s, const Box& window, int scale) {
  if (scale < 1) throw std::invalid_argument("scale must be positive");
  if (window.x1 < window.x0 || window.y1 < window.y0) throw std::invalid_argument("empty render window");
  const std::int64_t w = window.width() * scale;
  const std::int64_t h = window.height() * scale;
  std::string out = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  std::string row;
  for (std::int64_t y = window.y1; y >= window.y0; --y) {
    row.clear();
    for (std::int64_t x = window.x0; x <= window.x1; ++x) {
      Point p{static_cast<Coord>(x), static_cast<Coord>(y)};
      const char v = s.is_burnt(p) ? char(0) : s.is_protected(p) ? char(128) : char(255);
      row.append(static_cast<std::size_t>(scale), v);
    }
    for (int k = 0; k < scale; ++k) out += row;
  }
  return out;
}

}  // namespace firefight
