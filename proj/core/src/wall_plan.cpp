#include "firefight/wall_plan.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace firefight {

namespace {

Coord coord(std::int64_t v) {
  if (v < std::numeric_limits<Coord>::min() || v > std::numeric_limits<Coord>::max()) {
    throw std::overflow_error("wall plan coordinate out of range");
  }
  return static_cast<Coord>(v);
}

}  // namespace

PhaseTable phase_table(std::int64_t m, std::int64_t r) {
  PhaseTable t;
  t.end_round = {2 * r, 6 * r * m + 1, 6 * r * m * m + 10 * r * m, 12 * r * m * m + 30 * r * m};
  t.budget_required = {6 * r + 1, 18 * r * m + 6 * r + 4, 18 * r * m * m + 36 * r * m + 10 * r,
                       36 * r * m * m + 102 * r * m + 30 * r};
  t.width_bound = 6 * r * m * m + 16 * r * m + 2 * r;
  t.height_bound = 12 * r * m * m + 30 * r * m + 3 * r - 1;
  return t;
}

WallPlan wall_plan(std::int64_t m, std::int64_t r) {
  if (m < 1 || r < 1) throw std::invalid_argument("wall plan needs m >= 1 and r >= 1");
  WallPlan plan;
  plan.m = m;
  plan.r = r;
  plan.table = phase_table(m, r);

  const std::int64_t t_east = 6 * r * m + 1;
  const std::int64_t t_west = 6 * r * m * m + 10 * r * m + m + 1;
  const std::int64_t y_south = 1 - 30 * r * m - 12 * r * m * m;
  const std::int64_t t_south = -y_south - r;
  const std::int64_t y_north = 3 * r;
  const std::int64_t x_east = 6 * r * m + r + 1;
  const std::int64_t x_west = -(r + t_west);

  plan.north_y = coord(y_north);
  plan.east_x = coord(x_east);
  plan.west_x = coord(x_west);
  plan.south_y = coord(y_south);
  plan.freeze_round = {2 * r, t_east, t_west, t_south};

  // The fire at squad t is the rectangle reached by radius r+t-1 in every
  // direction that has not been walled off yet.
  std::vector<WallTask> tasks;
  auto add = [&](std::int64_t x, std::int64_t y, std::int64_t deadline) {
    WallTask task;
    task.target = {coord(x), coord(y)};
    task.deadline = deadline;
    task.rank = static_cast<std::int64_t>(tasks.size());
    tasks.push_back(task);
  };

  // North row, center outward.
  add(0, y_north, 2 * r);
  for (std::int64_t k = 1; k <= 3 * r; ++k) {
    add(k, y_north, 2 * r);
    add(-k, y_north, 2 * r);
  }
  // North row east of 3r, one cell ahead of the fire.
  for (std::int64_t x = 3 * r + 1; x <= x_east; ++x) add(x, y_north, x - r);
  for (std::int64_t y = y_north - 1; y >= -(r + t_east); --y) add(x_east, y, t_east);
  // North row west of -3r until the west column.
  for (std::int64_t t = 2 * r + 1; t <= t_west; ++t) add(-(r + t), y_north, t);
  for (std::int64_t y = y_north - 1; y >= -(r + t_west); --y) add(x_west, y, t_west);
  // Both columns keep one cell below the fire until the south row closes.
  for (std::int64_t t = t_east + 1; t <= t_south; ++t) add(x_east, -(r + t), t);
  for (std::int64_t t = t_west + 1; t <= t_south; ++t) add(x_west, -(r + t), t);
  for (std::int64_t x = x_west + 1; x < x_east; ++x) add(x, y_south, t_south);

  for (auto& task : tasks) {
    const auto& ends = plan.table.end_round;
    task.phase = task.deadline <= ends[0] ? 1 : task.deadline <= ends[1] ? 2 : task.deadline <= ends[2] ? 3 : 4;
  }
  std::stable_sort(tasks.begin(), tasks.end(), [](const WallTask& a, const WallTask& b) {
    if (a.deadline != b.deadline) return a.deadline < b.deadline;
    if (a.phase != b.phase) return a.phase < b.phase;
    return a.rank < b.rank;
  });
  plan.tasks = std::move(tasks);
  return plan;
}

std::vector<Point> WallPlan::source() const { return ball({0, 0}, r, Metric::LInf); }

std::int64_t WallPlan::targets_through(std::int64_t round) const {
  auto it = std::upper_bound(tasks.begin(), tasks.end(), round,
                             [](std::int64_t v, const WallTask& t) { return v < t.deadline; });
  return static_cast<std::int64_t>(it - tasks.begin());
}

Box WallPlan::final_fire_box() const {
  return {coord(std::int64_t{west_x} + 1), coord(std::int64_t{south_y} + 1), coord(std::int64_t{east_x} - 1),
          coord(std::int64_t{north_y} - 1)};
}

std::int64_t WallPlan::first_shortfall(const Budget& b) const {
  std::int64_t due = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    ++due;
    const bool last_of_deadline = i + 1 == tasks.size() || tasks[i + 1].deadline != tasks[i].deadline;
    if (last_of_deadline && b.cumulative(tasks[i].deadline) < due) return tasks[i].deadline;
  }
  return 0;
}

PlanParameters plan_parameters(std::int64_t r0, const Budget& b, std::int64_t horizon) {
  if (r0 < 0) throw std::invalid_argument("source radius must be nonnegative");
  if (horizon < 2) throw std::invalid_argument("scan horizon must be at least 2");
  const auto [sum, len] = b.tail_average();
  if (sum <= 3 * len) throw std::invalid_argument("insufficient budget: long-run average must exceed 3");
  PlanParameters p;
  p.eps_num = sum - 3 * len;
  p.eps_den = len;
  p.m = (p.eps_den + p.eps_num - 1) / p.eps_num;
  std::int64_t last_violation = 0;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    // f*(t) >= (sum/len) t, cleared of fractions.
    if (len * b.cumulative(t) < sum * t) last_violation = t;
  }
  if (last_violation > horizon / 2) {
    throw std::runtime_error("cannot bound t0 within " + std::to_string(horizon) +
                             " rounds; give t0 explicitly");
  }
  p.t0 = last_violation + 1;
  p.r = r0 + p.t0;
  return p;
}

}  // namespace firefight
