#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "firefight/engine.hpp"

namespace firefight {

struct SearchConfig {
  Topology topology = Topology::Cartesian;
  std::vector<Point> source{{0, 0}};
  Budget budget = Budget::constant(1);
  std::int64_t horizon = 1;
  /// Candidates are vacant points within l_inf distance d of burnt or
  /// protected points. nullopt: every vacant point within horizon+1 of the
  /// source, which is all a horizon-bounded game can use.
  std::optional<int> candidate_distance = 2;
  bool symmetry = true;
  std::uint64_t node_cap = 100'000'000;
  /// Root-level workers for exhaustive_search.
  int threads = 1;
  /// If set, min_burnt_search only accepts witnesses with fewer burnt points.
  std::optional<std::int64_t> burnt_limit;
  /// Called with the placement sequence of every leaf exhaustive_search
  /// evaluates (single worker only).
  std::function<void(const std::vector<std::vector<Point>>&)> leaf_observer;
};

enum class SearchOutcome : std::uint8_t { ControlledFound, ExhaustedNoControl, NodeCapHit };

std::string_view to_string(SearchOutcome outcome);

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::ExhaustedNoControl;
  std::uint64_t nodes = 0;
  /// Least rho(T) over leaves (Cartesian only). rho(T) is read at time T of
  /// the ignition time-line: T squads placed, T-1 spreads.
  std::optional<std::int64_t> min_rho;
  std::optional<std::int64_t> min_burnt;
  std::optional<std::int64_t> control_round;
  std::optional<RunTrace> witness;
  std::string candidate_rule;
  bool symmetry = false;
};

/// Depth-first over every squad of at most f(t) candidates (exactly
/// min(f, |candidates|) in the final round, where only points endangered
/// or next to an endangered point can matter). Stops at the first state
/// controlled within the horizon.
SearchResult exhaustive_search(const SearchConfig& cfg);

/// Branch and bound on the burnt count at control. Lower bound at a state
/// with endangered set E before round t: |burnt| + max(0, |E| - f(t)).
SearchResult min_burnt_search(const SearchConfig& cfg);

/// Replays a placement sequence through the engine; throws on illegality.
RunTrace witness_trace(const SearchConfig& cfg, const std::vector<std::vector<Point>>& squads);

}  // namespace firefight
