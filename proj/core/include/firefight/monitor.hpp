#pragma once

// Fire fronts on the Cartesian grid. For a direction (i, j) the front is the
// line i*x + j*y = c_ij with c_ij the least natural number whose line holds
// no burnt point. Lengths and potentials are quarter-integers, so they are
// kept as integer counts of quarters (suffix _q).
//
// Monitor time t follows the ignition time-line: at time t >= 1 the first
// t squads are placed and the fire has spread t-1 times. Time 0 is the
// empty grid before the source ignites.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "firefight/engine.hpp"

namespace firefight {

struct Direction {
  int i;
  int j;
};

/// Canonical order (+,+), (+,-), (-,+), (-,-).
inline constexpr std::array<Direction, 4> kDirections{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

/// Index of (i, j) in kDirections.
constexpr int dir_index(int i, int j) { return (i > 0 ? 0 : 2) + (j > 0 ? 0 : 1); }

using PerDirection = std::array<std::int64_t, 4>;

/// Literal scan c = 0, 1, 2, ... for each direction.
PerDirection front_offsets(const FireState& s);

/// rho_ij = (c_{i,-j} + c_{-i,j}) / 2, in quarters.
PerDirection front_lengths_q(const PerDirection& c);

struct Potentials {
  PerDirection phi_q{};
  std::int64_t total_q = 0;
  /// Endangered points on this front that also lie on another front.
  PerDirection corners{};
};

/// Endangered points on the front lines given by c; a point on two lines
/// gives half to each.
Potentials potentials(const FireState& s, const PerDirection& c);
Potentials potentials(const FireState& s);
/// Time-0 convention: the pending source is endangered, a quarter per front
/// and per source point.
Potentials initial_potentials(std::size_t source_size);

/// c(t+1) - c(t), each in {0, 1}; throws std::domain_error otherwise.
std::array<int, 4> activity(const PerDirection& c_t, const PerDirection& c_next);

struct FrontMetrics {
  std::int64_t t = 0;
  PerDirection c{};
  PerDirection rho_q{};
  std::int64_t rho = 0;  // sum of c
  PerDirection phi_q{};
  std::int64_t phi_total_q = 0;
  PerDirection corners{};
  std::array<int, 4> a{};  // c(t+1) - c(t)
  int a_total = 0;
  PerDirection fstar_dir{};   // attributed firefighters, cumulative
  std::int64_t fstar = 0;     // cumulative supply f*(t)
  std::int64_t placed = 0;    // cumulative firefighters actually placed
};

/// Cumulative per-direction attribution at t = 0..T. A firefighter is
/// counted once, at the first time it lies on a current front, for the
/// first such direction in canonical order.
std::vector<PerDirection> attribute_firefighters(const RunTrace& trace);

struct CheckViolation {
  std::int64_t t;
  std::string detail;
};

struct CheckResult {
  std::string name;        // "A".."F"
  std::string statement;
  bool asserted = true;    // F is diagnostic only
  std::int64_t checked = 0;
  std::int64_t vacuous = 0;  // rounds where the hypothesis did not hold
  std::int64_t void_from = -1;  // E: first t whose budget cap fails
  std::vector<CheckViolation> violations;
  std::int64_t min_slack_q = 0;  // F only
  bool passed() const { return !asserted || violations.empty(); }
};

struct MonitorReport {
  std::vector<FrontMetrics> rounds;  // t = 0..T
  std::vector<CheckResult> checks;   // A, B, C, D, E, F
  bool ever_controlled = false;
  bool ok() const;
};

/// Replays the trace (MalformedTrace on any inconsistency) and evaluates
/// the checks. Requires a Cartesian trace whose source contains the origin.
MonitorReport check_invariants(const RunTrace& trace, const Budget& b);

std::string report_json(const MonitorReport& report);
std::string report_table(const MonitorReport& report);

}  // namespace firefight
