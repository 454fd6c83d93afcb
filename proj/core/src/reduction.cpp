#include "firefight/reduction.hpp"

namespace firefight {

namespace {

std::string point_str(Point p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

}  // namespace

ReducedStrategy::ReducedStrategy(std::unique_ptr<Strategy> strong, Budget f, std::vector<Point> strong_source)
    : strong_(std::move(strong)), f_(std::move(f)), strong_state_(Topology::Strong, strong_source) {
  if (strong_state_.is_controlled()) strong_controlled_ = 0;
}

std::string ReducedStrategy::id() const { return "reduce(" + strong_->id() + ")"; }

std::vector<Point> ReducedStrategy::next_placements(const FireState& s, std::int64_t available) {
  const std::int64_t t = s.round() + 1;
  std::vector<Point> out;
  if (t % 2 == 0) {
    out = std::move(pending_);
    pending_.clear();
  } else {
    const std::int64_t k = (t + 1) / 2;
    const std::int64_t fk = f_.at(k);
    std::vector<Point> squad;
    try {
      squad = strong_->next_placements(strong_state_, fk);
      if (static_cast<std::int64_t>(squad.size()) > fk) throw StrategyError(k, "strong squad over budget");
      strong_state_.protect(squad);
    } catch (const StrategyError& e) {
      throw StrategyError(t, std::string("strong-grid strategy failed: ") + e.what());
    } catch (const IllegalPlacement& e) {
      throw StrategyError(t, std::string("strong-grid strategy failed: ") + e.what());
    }
    strong_state_.spread();
    if (!strong_controlled_ && strong_state_.is_controlled()) strong_controlled_ = k;
    const auto half = static_cast<std::size_t>(fk / 2);
    for (std::size_t i = 0; i < squad.size(); ++i) {
      (i < half ? out : pending_).push_back(skew_map(squad[i]));
    }
  }
  if (static_cast<std::int64_t>(out.size()) > available) {
    throw StrategyError(t, "split squad exceeds g(t)=" + std::to_string(available));
  }
  return out;
}

Reduction reduce_to_cartesian(std::unique_ptr<Strategy> strong, const Budget& f,
                              std::vector<Point> strong_source) {
  Reduction out{std::make_unique<ReducedStrategy>(std::move(strong), f, std::move(strong_source)),
                f.split_halves()};
  return out;
}

ParityAudit parity_audit(const RunTrace& trace) {
  ParityAudit audit;
  for (const auto& rec : trace.records) {
    for (auto p : rec.placed) {
      if (!is_even(p) && audit.placements_even) {
        audit.placements_even = false;
        if (audit.first_violation.empty()) {
          audit.first_violation = "round " + std::to_string(rec.t) + ": odd placement " + point_str(p);
        }
      }
    }
    const bool want_even = rec.t % 2 == 0;
    for (auto p : rec.ignited) {
      if (is_even(p) != want_even && audit.ignitions_alternate) {
        audit.ignitions_alternate = false;
        if (audit.first_violation.empty()) {
          audit.first_violation = "round " + std::to_string(rec.t) + ": ignition " + point_str(p) +
                                  " has the wrong parity";
        }
      }
    }
  }
  return audit;
}

}  // namespace firefight
