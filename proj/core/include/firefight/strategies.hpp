#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "firefight/engine.hpp"
#include "firefight/wall_plan.hpp"

namespace firefight {

class NullStrategy final : public Strategy {
 public:
  std::string id() const override { return "null"; }
  std::vector<Point> next_placements(const FireState&, std::int64_t) override { return {}; }
};

/// Protects the endangered points closest (Euclidean) to the centroid of
/// the burnt set; ties go to the row-major smaller point.
class GreedyStrategy final : public Strategy {
 public:
  std::string id() const override { return "greedy"; }
  std::vector<Point> next_placements(const FireState& s, std::int64_t available) override;
};

/// Uniform sample without replacement from the endangered points.
class RandomStrategy final : public Strategy {
 public:
  explicit RandomStrategy(std::uint64_t seed) : seed_(seed), rng_(seed) {}
  std::string id() const override { return "random:seed=" + std::to_string(seed_); }
  std::optional<std::uint64_t> seed() const override { return seed_; }
  std::vector<Point> next_placements(const FireState& s, std::int64_t available) override;

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

/// Plays back the placements of a recorded trace, round by round.
class ReplayStrategy final : public Strategy {
 public:
  ReplayStrategy(RunTrace trace, std::string source = {});
  std::string id() const override;
  std::optional<std::uint64_t> seed() const override { return trace_.seed; }
  std::vector<Point> next_placements(const FireState& s, std::int64_t available) override;

 private:
  RunTrace trace_;
  std::string source_;
};

/// Deadline scheduler for a WallPlan: each round it protects the next
/// unplaced tasks in (deadline, phase, rank) order, as many as the budget
/// allows, and fails as soon as some task would miss its deadline.
class ContainmentStrategy final : public Strategy {
 public:
  explicit ContainmentStrategy(WallPlan plan);
  std::string id() const override;
  std::vector<Point> next_placements(const FireState& s, std::int64_t available) override;
  const WallPlan& plan() const { return plan_; }

 private:
  WallPlan plan_;
  std::size_t next_ = 0;
};

std::unique_ptr<Strategy> null_strategy();
std::unique_ptr<Strategy> greedy_nearest();
std::unique_ptr<Strategy> random_strategy(std::uint64_t seed);
std::unique_ptr<Strategy> replay_strategy(RunTrace trace);
std::unique_ptr<ContainmentStrategy> containment_strategy(WallPlan plan);

}  // namespace firefight
