#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "firefight/budget.hpp"
#include "firefight/grid.hpp"

namespace firefight {

/// One wall cell. It must be protected by squad `deadline`, the first
/// round in which the fire comes within l_inf distance 1 of it.
struct WallTask {
  Point target;
  std::int64_t deadline = 0;
  int phase = 0;          // 1..4, by the nominal phase containing the deadline
  std::int64_t rank = 0;  // construction order
  friend bool operator==(const WallTask&, const WallTask&) = default;
};

/// Closed-form key times and sizes for the four-phase strategy.
struct PhaseTable {
  std::array<std::int64_t, 4> end_round;        // 2r, 6rm+1, 6rm^2+10rm, 12rm^2+30rm
  std::array<std::int64_t, 4> budget_required;  // f* needed at each end_round
  std::int64_t width_bound = 0;                 // 6rm^2+16rm+2r
  std::int64_t height_bound = 0;                // 12rm^2+30rm+3r-1
};

PhaseTable phase_table(std::int64_t m, std::int64_t r);

/// Wall layout for a fire that starts as the l_inf ball of radius r about
/// the origin and has f*(t) >= 3t + ceil(t/m).
///
/// North row y=3r, east column x=6rm+r+1 and south row
/// y=1-30rm-12rm^2 follow the closed forms. The west column sits at
/// x=-(r+tau_w) with tau_w = 6rm^2+10rm+m+1, the earliest freeze round the
/// cumulative budget can pay for.
struct WallPlan {
  std::int64_t m = 1;
  std::int64_t r = 1;
  PhaseTable table;
  Coord north_y = 0, east_x = 0, west_x = 0, south_y = 0;
  /// Rounds at which north, east, west and south stop advancing.
  std::array<std::int64_t, 4> freeze_round{};
  /// Sorted by (deadline, phase, rank).
  std::vector<WallTask> tasks;

  std::vector<Point> source() const;
  /// Number of tasks due no later than `round`.
  std::int64_t targets_through(std::int64_t round) const;
  /// Bounding box of the final burnt region.
  Box final_fire_box() const;
  /// First round t with f*(t) below the plan's cumulative demand, or 0.
  std::int64_t first_shortfall(const Budget& b) const;
};

WallPlan wall_plan(std::int64_t m, std::int64_t r);

struct PlanParameters {
  std::int64_t m = 1;
  std::int64_t r = 1;
  std::int64_t t0 = 1;
  std::int64_t eps_num = 1;  // eps = eps_num / eps_den
  std::int64_t eps_den = 1;
};

/// eps = (tail average) - 3, m = ceil(1/eps), t0 one past the last t <= H
/// with f*(t) < (3+eps)t, r = r0 + t0. Throws std::invalid_argument
/// ("insufficient budget") when eps <= 0 and std::runtime_error when the
/// last violation lies in the second half of the scan.
PlanParameters plan_parameters(std::int64_t r0, const Budget& b, std::int64_t horizon = 10000);

}  // namespace firefight
