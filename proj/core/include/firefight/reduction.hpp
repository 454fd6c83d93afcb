#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "firefight/engine.hpp"

namespace firefight {

/// Plays a strong-grid strategy on the Cartesian grid. Strong round k is
/// simulated internally at Cartesian round 2k-1; its squad is split in
/// plan order into the first floor(f(k)/2) points and the rest, and the
/// two halves are emitted through skew_map at rounds 2k-1 and 2k.
class ReducedStrategy final : public Strategy {
 public:
  ReducedStrategy(std::unique_ptr<Strategy> strong, Budget f, std::vector<Point> strong_source);
  std::string id() const override;
  std::optional<std::uint64_t> seed() const override { return strong_->seed(); }
  std::vector<Point> next_placements(const FireState& s, std::int64_t available) override;

  const FireState& strong_state() const { return strong_state_; }
  /// Strong round at which the internal fire became controlled, if it did.
  std::optional<std::int64_t> strong_controlled_round() const { return strong_controlled_; }

 private:
  std::unique_ptr<Strategy> strong_;
  Budget f_;
  FireState strong_state_;
  std::vector<Point> pending_;
  std::optional<std::int64_t> strong_controlled_;
};

struct Reduction {
  std::unique_ptr<ReducedStrategy> strategy;
  Budget g;
};

/// g(2k-1) = floor(f(k)/2), g(2k) = ceil(f(k)/2).
Reduction reduce_to_cartesian(std::unique_ptr<Strategy> strong, const Budget& f,
                              std::vector<Point> strong_source);

struct ParityAudit {
  bool placements_even = true;
  bool ignitions_alternate = true;
  std::string first_violation;
  bool ok() const { return placements_even && ignitions_alternate; }
};

/// Every placement has even coordinate sum; points ignited in round t
/// have the parity of t.
ParityAudit parity_audit(const RunTrace& cartesian_trace);

}  // namespace firefight
