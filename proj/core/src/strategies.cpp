#include "firefight/strategies.hpp"

#include <algorithm>

namespace firefight {

namespace {

__extension__ typedef __int128 wide;

}  // namespace

std::vector<Point> GreedyStrategy::next_placements(const FireState& s, std::int64_t available) {
  auto cand = s.endangered();
  if (cand.empty() || available <= 0) return {};
  // Distances to the centroid scaled by n = |burnt| to stay integral.
  const auto n = static_cast<wide>(s.burnt().size());
  wide sx = 0, sy = 0;
  for (auto p : s.burnt()) {
    sx += p.x;
    sy += p.y;
  }
  auto key = [&](Point p) {
    const wide dx = n * p.x - sx;
    const wide dy = n * p.y - sy;
    return dx * dx + dy * dy;
  };
  std::vector<std::pair<wide, Point>> keyed;
  keyed.reserve(cand.size());
  for (auto p : cand) keyed.emplace_back(key(p), p);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(available), keyed.size());
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(k), keyed.end(),
                    [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first < b.first;
                      return a.second < b.second;
                    });
  std::vector<Point> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(keyed[i].second);
  return out;
}

std::vector<Point> RandomStrategy::next_placements(const FireState& s, std::int64_t available) {
  auto cand = s.endangered();
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(std::max<std::int64_t>(available, 0)), cand.size());
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, cand.size() - 1);
    std::swap(cand[i], cand[pick(rng_)]);
  }
  cand.resize(k);
  return cand;
}

ReplayStrategy::ReplayStrategy(RunTrace trace, std::string source)
    : trace_(std::move(trace)), source_(std::move(source)) {}

std::string ReplayStrategy::id() const {
  return source_.empty() ? "replay:" + trace_.strategy : "replay:file=" + source_;
}

std::vector<Point> ReplayStrategy::next_placements(const FireState& s, std::int64_t available) {
  const std::int64_t t = s.round() + 1;
  const auto idx = static_cast<std::size_t>(s.round());
  if (idx >= trace_.records.size()) return {};
  const auto& rec = trace_.records[idx];
  if (rec.t != t) throw StrategyError(t, "replayed record is for round " + std::to_string(rec.t));
  if (static_cast<std::int64_t>(rec.placed.size()) > available) {
    throw StrategyError(t, "replayed squad exceeds the budget");
  }
  PointSet seen;
  for (auto p : rec.placed) {
    if (!s.is_vacant(p) || !seen.insert(p).second) {
      throw StrategyError(t, "replayed placement is illegal here", p);
    }
  }
  return rec.placed;
}

ContainmentStrategy::ContainmentStrategy(WallPlan plan) : plan_(std::move(plan)) {}

std::string ContainmentStrategy::id() const {
  return "contain:m=" + std::to_string(plan_.m) + ",r=" + std::to_string(plan_.r);
}

std::vector<Point> ContainmentStrategy::next_placements(const FireState& s, std::int64_t available) {
  const std::int64_t t = s.round() + 1;
  const auto& tasks = plan_.tasks;
  std::vector<Point> out;
  while (next_ < tasks.size() && static_cast<std::int64_t>(out.size()) < available) {
    const auto& task = tasks[next_];
    if (task.deadline < t) {
      throw StrategyError(t, "wall task (phase " + std::to_string(task.phase) + ", deadline " +
                                 std::to_string(task.deadline) + ") missed", task.target);
    }
    ++next_;
    if (s.is_protected(task.target)) continue;
    if (s.is_burnt(task.target)) {
      throw StrategyError(t, "wall cell burnt before its deadline", task.target);
    }
    out.push_back(task.target);
  }
  if (next_ < tasks.size() && tasks[next_].deadline <= t) {
    const auto& task = tasks[next_];
    throw StrategyError(t, "budget too small for wall task (phase " + std::to_string(task.phase) +
                               ", deadline " + std::to_string(task.deadline) + ")", task.target);
  }
  return out;
}

std::unique_ptr<Strategy> null_strategy() { return std::make_unique<NullStrategy>(); }
std::unique_ptr<Strategy> greedy_nearest() { return std::make_unique<GreedyStrategy>(); }
std::unique_ptr<Strategy> random_strategy(std::uint64_t seed) { return std::make_unique<RandomStrategy>(seed); }
std::unique_ptr<Strategy> replay_strategy(RunTrace trace) { return std::make_unique<ReplayStrategy>(std::move(trace)); }
std::unique_ptr<ContainmentStrategy> containment_strategy(WallPlan plan) {
  return std::make_unique<ContainmentStrategy>(std::move(plan));
}

}  // namespace firefight
