#pragma once

// Reference computations that share no code with the library: plain
// std::set, hard-coded offsets, brute-force scans.

#include <cstdint>
#include <cstdlib>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Cell = std::pair<int, int>;  // (x, y)
using Cells = std::set<Cell>;

inline std::vector<Cell> offsets(char topo) {
  if (topo == 'c') return {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  if (topo == 't') return {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}};
  return {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
}

/// Breadth-first fire: `rounds` spreads from `source`, protected cells
/// never burn.
inline Cells bfs_fire(char topo, const Cells& source, std::int64_t rounds, const Cells& blocked = {}) {
  Cells burnt = source;
  Cells layer = source;
  for (std::int64_t k = 0; k < rounds; ++k) {
    Cells next;
    for (auto [x, y] : layer) {
      for (auto [dx, dy] : offsets(topo)) {
        Cell q{x + dx, y + dy};
        if (!burnt.contains(q) && !blocked.contains(q)) next.insert(q);
      }
    }
    burnt.insert(next.begin(), next.end());
    layer = std::move(next);
  }
  return burnt;
}

/// Every cell of the square [-R, R]^2 with |x|+|y| <= r (l1) or
/// max(|x|,|y|) <= r (linf).
inline Cells enumerate_ball(int r, bool linf) {
  Cells out;
  for (int x = -r; x <= r; ++x) {
    for (int y = -r; y <= r; ++y) {
      const int d = linf ? std::max(std::abs(x), std::abs(y)) : std::abs(x) + std::abs(y);
      if (d <= r) out.insert({x, y});
    }
  }
  return out;
}

}  // namespace oracle
