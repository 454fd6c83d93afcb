#include "firefight/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace firefight {

namespace {

constexpr std::array<Offset, 4> kCartesian{{{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};
constexpr std::array<Offset, 8> kStrong{
    {{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}}};
// Cartesian plus the (1,1) / (-1,-1) diagonal.
constexpr std::array<Offset, 6> kTriangular{
    {{-1, -1}, {0, -1}, {-1, 0}, {1, 0}, {0, 1}, {1, 1}}};

}  // namespace

std::string_view to_string(Topology topo) {
  switch (topo) {
    case Topology::Cartesian: return "cartesian";
    case Topology::Strong: return "strong";
    case Topology::Triangular: return "triangular";
  }
  return "?";
}

std::string_view to_string(Metric metric) { return metric == Metric::L1 ? "l1" : "linf"; }

Topology parse_topology(std::string_view name) {
  if (name == "cartesian") return Topology::Cartesian;
  if (name == "strong") return Topology::Strong;
  if (name == "triangular") return Topology::Triangular;
  throw std::invalid_argument("unknown topology '" + std::string(name) + "'");
}

Metric parse_metric(std::string_view name) {
  if (name == "l1") return Metric::L1;
  if (name == "linf") return Metric::LInf;
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

std::span<const Offset> neighbor_offsets(Topology topo) {
  switch (topo) {
    case Topology::Cartesian: return kCartesian;
    case Topology::Strong: return kStrong;
    case Topology::Triangular: return kTriangular;
  }
  return {};
}

Metric natural_metric(Topology topo) {
  return topo == Topology::Cartesian ? Metric::L1 : Metric::LInf;
}

Coord checked_add(Coord a, Coord b) {
  Coord out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("lattice coordinate overflow");
  }
  return out;
}

Point translate(Point p, Offset o) { return {checked_add(p.x, o.dx), checked_add(p.y, o.dy)}; }

std::vector<Point> neighbors(Point p, Topology topo) {
  auto offs = neighbor_offsets(topo);
  std::vector<Point> out;
  out.reserve(offs.size());
  for (auto o : offs) out.push_back(translate(p, o));
  return out;
}

bool adjacent(Point a, Point b, Topology topo) {
  const std::int64_t dx = std::int64_t{b.x} - a.x;
  const std::int64_t dy = std::int64_t{b.y} - a.y;
  for (auto o : neighbor_offsets(topo)) {
    if (o.dx == dx && o.dy == dy) return true;
  }
  return false;
}

std::int64_t l1_distance(Point a, Point b) {
  return std::llabs(std::int64_t{a.x} - b.x) + std::llabs(std::int64_t{a.y} - b.y);
}

std::int64_t linf_distance(Point a, Point b) {
  return std::max(std::llabs(std::int64_t{a.x} - b.x), std::llabs(std::int64_t{a.y} - b.y));
}

std::int64_t distance(Point a, Point b, Metric metric) {
  return metric == Metric::L1 ? l1_distance(a, b) : linf_distance(a, b);
}

std::vector<Point> ball(Point center, std::int64_t radius, Metric metric) {
  if (radius < 0) throw std::invalid_argument("ball radius must be nonnegative");
  if (radius > std::numeric_limits<Coord>::max() / 2) throw std::overflow_error("ball radius too large");
  const auto r = static_cast<Coord>(radius);
  std::vector<Point> out;
  for (Coord dy = -r; dy <= r; ++dy) {
    const Coord span = metric == Metric::L1 ? r - std::abs(dy) : r;
    for (Coord dx = -span; dx <= span; ++dx) {
      out.push_back(translate(center, {dx, dy}));
    }
  }
  return out;
}

Point skew_map(Point p) {
  Coord diff;
  if (__builtin_sub_overflow(p.x, p.y, &diff)) throw std::overflow_error("lattice coordinate overflow");
  return {checked_add(p.x, p.y), diff};
}

bool is_even(Point p) { return ((std::int64_t{p.x} + p.y) & 1) == 0; }

std::vector<Point> sorted(const PointSet& set) {
  std::vector<Point> out(set.begin(), set.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace firefight
