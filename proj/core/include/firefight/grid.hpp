#pragma once

// Lattice geometry for the three planar grids: points, neighborhoods,
// metric balls and the skew map between the strong grid and the even
// sublattice of the Cartesian grid.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace firefight {

using Coord = std::int32_t;

struct Point {
  Coord x = 0;
  Coord y = 0;

  friend constexpr bool operator==(const Point&, const Point&) = default;

  /// Row-major order: by y, then by x.
  friend constexpr std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::uint64_t v = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x)) << 32) |
                      static_cast<std::uint32_t>(p.y);
    v ^= v >> 33;
    v *= 0xff51afd7ed558ccdULL;
    v ^= v >> 33;
    v *= 0xc4ceb9fe1a85ec53ULL;
    v ^= v >> 33;
    return static_cast<std::size_t>(v);
  }
};

using PointSet = std::unordered_set<Point, PointHash>;

enum class Topology : std::uint8_t { Cartesian, Strong, Triangular };
enum class Metric : std::uint8_t { L1, LInf };

struct Offset {
  Coord dx;
  Coord dy;
};

std::string_view to_string(Topology topo);
std::string_view to_string(Metric metric);
Topology parse_topology(std::string_view name);
Metric parse_metric(std::string_view name);

/// Unit-step offsets of a topology, sorted row-major so that neighbors
/// enumerate in (y, x) order.
std::span<const Offset> neighbor_offsets(Topology topo);

/// The metric whose unit sphere is the topology's neighborhood. The
/// triangular grid has no such metric; l_inf is returned as its enclosing
/// metric.
Metric natural_metric(Topology topo);

/// Adds with a checked overflow; throws std::overflow_error.
Coord checked_add(Coord a, Coord b);
Point translate(Point p, Offset o);

std::vector<Point> neighbors(Point p, Topology topo);
bool adjacent(Point a, Point b, Topology topo);

std::int64_t l1_distance(Point a, Point b);
std::int64_t linf_distance(Point a, Point b);
std::int64_t distance(Point a, Point b, Metric metric);

/// Exact metric ball, row-major order.
std::vector<Point> ball(Point center, std::int64_t radius, Metric metric);

/// (x, y) -> (x + y, x - y). Injective; its image is the set of even points.
Point skew_map(Point p);
bool is_even(Point p);

/// Axis-aligned bounding box of a nonempty point set.
struct Box {
  Coord x0, y0, x1, y1;
  std::int64_t width() const { return std::int64_t{x1} - x0 + 1; }
  std::int64_t height() const { return std::int64_t{y1} - y0 + 1; }
  std::int64_t area() const { return width() * height(); }
  bool contains(Point p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  friend bool operator==(const Box&, const Box&) = default;
};

template <typename Range>
Box bounding_box(const Range& points) {
  auto it = std::begin(points);
  Box b{it->x, it->y, it->x, it->y};
  for (; it != std::end(points); ++it) {
    b.x0 = std::min(b.x0, it->x);
    b.x1 = std::max(b.x1, it->x);
    b.y0 = std::min(b.y0, it->y);
    b.y1 = std::max(b.y1, it->y);
  }
  return b;
}

std::vector<Point> sorted(const PointSet& set);

}  // namespace firefight
