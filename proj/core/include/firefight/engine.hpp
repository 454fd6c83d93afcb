#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "firefight/budget.hpp"
#include "firefight/grid.hpp"

namespace firefight {

/// A placement that the current state does not allow.
class IllegalPlacement : public std::runtime_error {
 public:
  IllegalPlacement(Point p, const std::string& reason);
  Point point() const { return point_; }

 private:
  Point point_;
};

/// A strategy could not produce a legal or timely move.
class StrategyError : public std::runtime_error {
 public:
  StrategyError(std::int64_t round, const std::string& what, std::optional<Point> p = std::nullopt);
  std::int64_t round() const { return round_; }
  std::optional<Point> point() const { return point_; }

 private:
  std::int64_t round_;
  std::optional<Point> point_;
};

/// Process state after `round` (place, spread) steps.
///
/// Round 0 holds the source. Spreading only looks at the cells ignited
/// last round: every older burnt cell already has all its neighbors burnt
/// or protected.
class FireState {
 public:
  explicit FireState(Topology topo, std::span<const Point> burnt = {},
                     std::span<const Point> protected_points = {}, std::int64_t round = 0);

  Topology topology() const { return topo_; }
  std::int64_t round() const { return round_; }
  const PointSet& burnt() const { return burnt_; }
  const PointSet& protected_points() const { return protected_; }
  const std::vector<Point>& frontier() const { return frontier_; }

  bool is_burnt(Point p) const { return burnt_.contains(p); }
  bool is_protected(Point p) const { return protected_.contains(p); }
  bool is_vacant(Point p) const { return !is_burnt(p) && !is_protected(p); }

  /// Protects the points in order; throws IllegalPlacement on a burnt,
  /// protected or repeated point, leaving the state unchanged.
  void protect(std::span<const Point> points);

  /// Ignites every endangered point and advances the round. Returns the
  /// newly burnt points, row-major.
  std::vector<Point> spread();

  /// Unburnt, unprotected neighbors of burnt points, row-major.
  std::vector<Point> endangered() const;
  bool is_controlled() const;

 private:
  Topology topo_;
  std::int64_t round_;
  PointSet burnt_;
  PointSet protected_;
  std::vector<Point> frontier_;
};

/// One (place, spread) step; also enforces |placements| <= f(round+1).
FireState step(const FireState& s, std::span<const Point> placements, const Budget& b);
std::vector<Point> endangered(const FireState& s);
bool is_controlled(const FireState& s);

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string id() const = 0;
  virtual std::optional<std::uint64_t> seed() const { return std::nullopt; }
  /// Points to protect in round s.round()+1, at most `available` of them.
  virtual std::vector<Point> next_placements(const FireState& s, std::int64_t available) = 0;
};

struct RoundRecord {
  std::int64_t t = 0;
  std::int64_t f = 0;
  std::vector<Point> placed;
  std::vector<Point> ignited;
  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

enum class RunStatus : std::uint8_t { Controlled, HorizonReached, StrategyFailed };

struct RunTrace {
  Topology topology = Topology::Cartesian;
  std::vector<Point> initial_burnt;
  std::vector<Point> initial_protected;
  std::string budget;
  std::string strategy;
  std::optional<std::uint64_t> seed;
  std::vector<RoundRecord> records;
  RunStatus status = RunStatus::HorizonReached;
  std::int64_t final_round = 0;
  std::string error;

  FireState initial_state() const;
  friend bool operator==(const RunTrace&, const RunTrace&) = default;
};

std::string_view to_string(RunStatus status);

using RoundObserver = std::function<void(const FireState&, const RoundRecord&)>;

/// Steps the strategy until the fire is controlled or `horizon` rounds
/// have passed. Strategy failures end the trace with StrategyFailed.
RunTrace run(const FireState& initial, const Budget& b, Strategy& strat, std::int64_t horizon,
             const RoundObserver& observer = {});

}  // namespace firefight
