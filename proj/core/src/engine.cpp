#include "firefight/engine.hpp"

#include <algorithm>

namespace firefight {

namespace {

std::string point_str(Point p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

std::string strategy_message(std::int64_t round, const std::string& what, std::optional<Point> p) {
  std::string msg = "round " + std::to_string(round) + ": " + what;
  if (p) msg += " at " + point_str(*p);
  return msg;
}

}  // namespace

IllegalPlacement::IllegalPlacement(Point p, const std::string& reason)
    : std::runtime_error("illegal placement at " + point_str(p) + ": " + reason), point_(p) {}

StrategyError::StrategyError(std::int64_t round, const std::string& what, std::optional<Point> p)
    : std::runtime_error(strategy_message(round, what, p)), round_(round), point_(p) {}

FireState::FireState(Topology topo, std::span<const Point> burnt, std::span<const Point> protected_points,
                     std::int64_t round)
    : topo_(topo), round_(round) {
  if (round < 0) throw std::invalid_argument("round must be nonnegative");
  burnt_.insert(burnt.begin(), burnt.end());
  for (auto p : protected_points) {
    if (burnt_.contains(p)) throw IllegalPlacement(p, "point is both burnt and protected");
    protected_.insert(p);
  }
  frontier_ = sorted(burnt_);
}

void FireState::protect(std::span<const Point> points) {
  PointSet seen;
  for (auto p : points) {
    if (burnt_.contains(p)) throw IllegalPlacement(p, "point is burnt");
    if (protected_.contains(p)) throw IllegalPlacement(p, "point is already protected");
    if (!seen.insert(p).second) throw IllegalPlacement(p, "duplicate placement");
  }
  protected_.insert(points.begin(), points.end());
}

std::vector<Point> FireState::spread() {
  std::vector<Point> ignited = endangered();
  burnt_.insert(ignited.begin(), ignited.end());
  frontier_ = ignited;
  ++round_;
  return ignited;
}

std::vector<Point> FireState::endangered() const {
  PointSet out;
  for (auto p : frontier_) {
    for (auto o : neighbor_offsets(topo_)) {
      Point q = translate(p, o);
      if (is_vacant(q)) out.insert(q);
    }
  }
  return sorted(out);
}

bool FireState::is_controlled() const {
  for (auto p : frontier_) {
    for (auto o : neighbor_offsets(topo_)) {
      if (is_vacant(translate(p, o))) return false;
    }
  }
  return true;
}

FireState step(const FireState& s, std::span<const Point> placements, const Budget& b) {
  const std::int64_t f = b.at(s.round() + 1);
  if (static_cast<std::int64_t>(placements.size()) > f) {
    throw IllegalPlacement(placements[static_cast<std::size_t>(f)],
                           "over budget: " + std::to_string(placements.size()) + " placements, f=" +
                               std::to_string(f));
  }
  FireState next = s;
  next.protect(placements);
  next.spread();
  return next;
}

std::vector<Point> endangered(const FireState& s) { return s.endangered(); }
bool is_controlled(const FireState& s) { return s.is_controlled(); }

FireState RunTrace::initial_state() const {
  return FireState(topology, initial_burnt, initial_protected);
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Controlled: return "controlled";
    case RunStatus::HorizonReached: return "horizon";
    case RunStatus::StrategyFailed: return "strategy_error";
  }
  return "?";
}

RunTrace run(const FireState& initial, const Budget& b, Strategy& strat, std::int64_t horizon,
             const RoundObserver& observer) {
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  RunTrace trace;
  trace.topology = initial.topology();
  trace.initial_burnt = sorted(initial.burnt());
  trace.initial_protected = sorted(initial.protected_points());
  trace.budget = b.describe();
  trace.strategy = strat.id();
  trace.seed = strat.seed();

  FireState state = initial;
  trace.final_round = state.round();
  if (state.is_controlled()) {
    trace.status = RunStatus::Controlled;
    return trace;
  }
  for (std::int64_t k = 0; k < horizon; ++k) {
    const std::int64_t t = state.round() + 1;
    RoundRecord rec;
    rec.t = t;
    rec.f = b.at(t);
    try {
      rec.placed = strat.next_placements(state, rec.f);
      if (static_cast<std::int64_t>(rec.placed.size()) > rec.f) {
        throw StrategyError(t, "strategy proposed " + std::to_string(rec.placed.size()) +
                                   " placements with f=" + std::to_string(rec.f));
      }
      state.protect(rec.placed);
    } catch (const IllegalPlacement& e) {
      trace.status = RunStatus::StrategyFailed;
      trace.final_round = t;
      trace.error = StrategyError(t, e.what(), e.point()).what();
      return trace;
    } catch (const StrategyError& e) {
      trace.status = RunStatus::StrategyFailed;
      trace.final_round = t;
      trace.error = e.what();
      return trace;
    }
    rec.ignited = state.spread();
    trace.final_round = t;
    if (observer) observer(state, rec);
    trace.records.push_back(std::move(rec));
    if (state.is_controlled()) {
      trace.status = RunStatus::Controlled;
      return trace;
    }
  }
  trace.status = RunStatus::HorizonReached;
  return trace;
}

}  // namespace firefight
