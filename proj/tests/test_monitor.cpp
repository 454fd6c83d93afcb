#include <gtest/gtest.h>

#include <map>

#include "firefight/monitor.hpp"
#include "firefight/strategies.hpp"
#include "firefight/trace.hpp"
#include "oracles.hpp"

using namespace firefight;

namespace {

const std::vector<Point> kOrigin{{0, 0}};

class Script final : public Strategy {
 public:
  explicit Script(std::vector<std::vector<Point>> squads) : squads_(std::move(squads)) {}
  std::string id() const override { return "script"; }
  std::vector<Point> next_placements(const FireState& s, std::int64_t) override {
    const auto k = static_cast<std::size_t>(s.round());
    return k < squads_.size() ? squads_[k] : std::vector<Point>{};
  }

 private:
  std::vector<std::vector<Point>> squads_;
};

RunTrace run_with(Strategy& strat, const Budget& b, std::int64_t horizon) {
  return run(FireState(Topology::Cartesian, kOrigin), b, strat, horizon);
}

const CheckResult& check(const MonitorReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return c;
  }
  throw std::logic_error("no check " + name);
}

// Brute-force potentials in quarters: scan the endangered points and count
// the front lines through each.
std::array<std::int64_t, 4> brute_phi_q(const FireState& s) {
  const auto c = front_offsets(s);
  std::array<std::int64_t, 4> phi{};
  for (auto p : s.endangered()) {
    std::vector<int> on;
    for (int d = 0; d < 4; ++d) {
      if (kDirections[d].i * p.x + kDirections[d].j * p.y == c[d]) on.push_back(d);
    }
    for (int d : on) phi[d] += 4 / static_cast<std::int64_t>(on.size());
  }
  return phi;
}

// rho_ij as the l_inf distance between the two corners of L_ij, in halves.
std::int64_t corner_length_halves(const PerDirection& c, int d) {
  const int i = kDirections[d].i, j = kDirections[d].j;
  const auto cij = c[d], cimj = c[dir_index(i, -j)], cmij = c[dir_index(-i, j)];
  // L_ij meets L_i,-j at 2(x, y) = (i(cij + cimj), j(cij - cimj)) and
  // L_-i,j at 2(x, y) = (i(cij - cmij), j(cij + cmij)).
  const std::int64_t ax = i * (cij + cimj), ay = j * (cij - cimj);
  const std::int64_t bx = i * (cij - cmij), by = j * (cij + cmij);
  return std::max(std::abs(ax - bx), std::abs(ay - by));
}

std::vector<RunTrace> sample_traces() {
  std::vector<RunTrace> out;
  NullStrategy null;
  out.push_back(run_with(null, Budget::constant(0), 15));
  for (const auto& b : {Budget::periodic({2, 1}), Budget::periodic({1, 2}), Budget::constant(1), Budget::constant(2)}) {
    GreedyStrategy greedy;
    out.push_back(run_with(greedy, b, 60));
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      RandomStrategy rnd(seed);
      out.push_back(run_with(rnd, b, 60));
    }
  }
  return out;
}

}  // namespace

TEST(Fronts, Offsets) {
  EXPECT_EQ(front_offsets(FireState(Topology::Cartesian)), (PerDirection{0, 0, 0, 0}));
  EXPECT_EQ(front_offsets(FireState(Topology::Cartesian, kOrigin)), (PerDirection{1, 1, 1, 1}));
  for (int t = 1; t <= 9; ++t) {
    std::vector<Point> burnt;
    for (auto [x, y] : oracle::bfs_fire('c', {{0, 0}}, t - 1)) burnt.push_back({x, y});
    const auto c = front_offsets(FireState(Topology::Cartesian, burnt));
    EXPECT_EQ(c, (PerDirection{t, t, t, t}));
    EXPECT_EQ(c[0] + c[1] + c[2] + c[3], 4 * t);
  }
  EXPECT_THROW(front_offsets(FireState(Topology::Strong, kOrigin)), std::invalid_argument);
}

TEST(Fronts, OffsetScanSeesHoles) {
  // Burnt points at distance 0 and 2 along x+y but none at 1.
  const std::vector<Point> burnt{{0, 0}, {2, 0}};
  EXPECT_EQ(front_offsets(FireState(Topology::Cartesian, burnt))[0], 1);
}

TEST(Fronts, LengthIdentityOnSampledStates) {
  for (const auto& trace : sample_traces()) {
    replay(trace, [&](const FireState& s, const RoundRecord&, ReplayStage stage) {
      if (stage != ReplayStage::Spread) return;
      const auto c = front_offsets(s);
      const auto rho_q = front_lengths_q(c);
      for (int d = 0; d < 4; ++d) {
        EXPECT_EQ(rho_q[d], 2 * corner_length_halves(c, d));
        EXPECT_EQ(rho_q[d], rho_q[3 - d]);
      }
      EXPECT_EQ(rho_q[0] + rho_q[1] + rho_q[2] + rho_q[3], 4 * (c[0] + c[1] + c[2] + c[3]));
    });
  }
}

TEST(Potentials, Examples) {
  const auto open = potentials(FireState(Topology::Cartesian, kOrigin));
  EXPECT_EQ(open.total_q, 16);
  EXPECT_EQ(open.phi_q, (PerDirection{4, 4, 4, 4}));
  const std::vector<Point> ring{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  EXPECT_EQ(potentials(FireState(Topology::Cartesian, kOrigin, ring)).total_q, 0);
  const auto init = initial_potentials(1);
  EXPECT_EQ(init.total_q, 4);
  EXPECT_EQ(init.phi_q, (PerDirection{1, 1, 1, 1}));
}

TEST(Potentials, MatchBruteForce) {
  for (const auto& trace : sample_traces()) {
    replay(trace, [&](const FireState& s, const RoundRecord&, ReplayStage stage) {
      if (stage != ReplayStage::Placed) return;
      const auto p = potentials(s);
      EXPECT_EQ(p.phi_q, brute_phi_q(s));
      EXPECT_EQ(p.total_q, p.phi_q[0] + p.phi_q[1] + p.phi_q[2] + p.phi_q[3]);
    });
  }
}

TEST(Activity, Basics) {
  const auto a = activity({1, 2, 3, 4}, {2, 2, 4, 4});
  EXPECT_EQ(a, (std::array<int, 4>{1, 0, 1, 0}));
  EXPECT_THROW(activity({1, 1, 1, 1}, {3, 1, 1, 1}), std::domain_error);
  EXPECT_THROW(activity({1, 1, 1, 1}, {0, 1, 1, 1}), std::domain_error);
}

TEST(Activity, FreeFireHasAllFrontsActive) {
  NullStrategy null;
  const auto r = check_invariants(run_with(null, Budget::constant(0), 10), Budget::constant(0));
  for (const auto& m : r.rounds) {
    if (m.t >= 1 && m.t < 10) {
      EXPECT_EQ(m.a_total, 4);
    }
  }
}

TEST(Activity, SurroundedFireFreezes) {
  Script ring({{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}});
  const auto trace = run_with(ring, Budget::constant(4), 5);
  ASSERT_EQ(trace.status, RunStatus::Controlled);
  const auto r = check_invariants(trace, Budget::constant(4));
  EXPECT_EQ(r.rounds.back().a_total, 0);
  EXPECT_TRUE(r.ever_controlled);
}

TEST(Activity, PerimeterGrowsByActiveCount) {
  for (const auto& trace : sample_traces()) {
    const auto r = check_invariants(trace, Budget::parse(trace.budget));
    for (std::size_t t = 0; t + 1 < r.rounds.size(); ++t) {
      EXPECT_EQ(r.rounds[t + 1].rho - r.rounds[t].rho, r.rounds[t].a_total) << "t=" << t;
    }
  }
}

TEST(Attribution, SingleLineCornerAndNever) {
  // Time 2: the fire is the l1 ball of radius 1 and every c is 2.
  Script script({{}, {{1, 1}, {2, 0}, {10, 10}}});
  const auto trace = run_with(script, Budget::constant(3), 2);
  const auto f = attribute_firefighters(trace);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[1], (PerDirection{0, 0, 0, 0}));
  // (1,1) lies on x+y=2 only; (2,0) on x+y=2 and x-y=2 goes to (+,+) too;
  // (10,10) is never on a front.
  EXPECT_EQ(f[2], (PerDirection{2, 0, 0, 0}));
}

TEST(Attribution, CountedOnceAndBoundedBySupply) {
  for (const auto& trace : sample_traces()) {
    const auto b = Budget::parse(trace.budget);
    const auto f = attribute_firefighters(trace);
    std::int64_t placed = 0;
    for (std::size_t t = 1; t < f.size(); ++t) {
      placed += static_cast<std::int64_t>(trace.records[t - 1].placed.size());
      const auto sum = f[t][0] + f[t][1] + f[t][2] + f[t][3];
      EXPECT_LE(sum, placed);
      EXPECT_LE(sum, b.cumulative(static_cast<std::int64_t>(t)));
      for (int d = 0; d < 4; ++d) EXPECT_GE(f[t][d], f[t - 1][d]);
    }
  }
}

TEST(Checks, FreeFire) {
  NullStrategy null;
  const auto r = check_invariants(run_with(null, Budget::constant(0), 10), Budget::constant(0));
  for (const char* name : {"A", "B", "C", "D", "E"}) EXPECT_TRUE(check(r, name).passed()) << name;
  EXPECT_EQ(r.rounds[10].rho, 40);
  EXPECT_TRUE(r.ok());
}

TEST(Checks, CapCompliantRunsKeepTheFireGrowing) {
  for (const auto& b : {Budget::periodic({2, 1}), Budget::periodic({1, 2}), Budget::constant(1)}) {
    std::vector<RunTrace> traces;
    GreedyStrategy greedy;
    traces.push_back(run_with(greedy, b, 120));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      RandomStrategy rnd(seed);
      traces.push_back(run_with(rnd, b, 80));
    }
    for (const auto& trace : traces) {
      const auto r = check_invariants(trace, b);
      for (const char* name : {"A", "B", "D", "E"}) {
        const auto& c = check(r, name);
        EXPECT_TRUE(c.passed()) << trace.strategy << " " << b.describe() << " check " << name << " t="
                                << (c.violations.empty() ? -1 : c.violations.front().t);
      }
      EXPECT_EQ(check(r, "E").void_from, -1);
      EXPECT_FALSE(r.ever_controlled);
      for (const auto& m : r.rounds) EXPECT_GE(m.rho, 3 * m.t);
    }
  }
}

TEST(Checks, TwoCornerGuardsAtTimeOneBreakCheckC) {
  // Two firefighters on origin neighbors: rho(1) = 4 >= 2f*(1) - 1 = 3 yet
  // phi(1) = 2 = rho/2, so the strict inequality fails at t = 1.
  GreedyStrategy greedy;
  const auto r = check_invariants(run_with(greedy, Budget::periodic({2, 1}), 20), Budget::periodic({2, 1}));
  const auto& c = check(r, "C");
  ASSERT_FALSE(c.passed());
  EXPECT_EQ(c.violations.front().t, 1);
  EXPECT_EQ(r.rounds[1].rho, 4);
  EXPECT_EQ(r.rounds[1].phi_total_q, 8);
  EXPECT_TRUE(check(r, "D").passed());
  EXPECT_TRUE(check(r, "E").passed());
}

TEST(Checks, ConstantTwoVoidsTheCap) {
  GreedyStrategy greedy;
  const auto r = check_invariants(run_with(greedy, Budget::constant(2), 30), Budget::constant(2));
  const auto& e = check(r, "E");
  EXPECT_EQ(e.void_from, 2);
  EXPECT_TRUE(e.passed());
}

TEST(Checks, DiagnosticBoundNeverFailsTheRun) {
  NullStrategy null;
  const auto r = check_invariants(run_with(null, Budget::constant(0), 5), Budget::constant(0));
  const auto& f = check(r, "F");
  EXPECT_FALSE(f.asserted);
  EXPECT_TRUE(f.passed());
  // phi_ij(1) = 1 against the 1/4 + 1 the bound asks for.
  EXPECT_EQ(f.min_slack_q, -1);
}

TEST(Checks, ReactivationAlwaysCarriesPotential) {
  for (const auto& trace : sample_traces()) {
    const auto r = check_invariants(trace, Budget::parse(trace.budget));
    for (std::size_t t = 2; t < r.rounds.size(); ++t) {
      for (int d = 0; d < 4; ++d) {
        if (r.rounds[t - 1].a[d] == 0 && r.rounds[t].a[d] == 1) {
          EXPECT_EQ(r.rounds[t - 1].phi_q[d], 0);
          EXPECT_GT(r.rounds[t].phi_q[d], 0);
        }
      }
    }
  }
}

// A frozen front need not wake through a single half-weight corner. Here the
// (-,+) front advances past (-2,2), which endangers two corners and one
// interior point of the frozen (-,-) line in the same round.
TEST(Checks, ReactivationThroughCornerAndInteriorPoint) {
  RandomStrategy rnd(1);
  const auto b = Budget::periodic({2, 1});
  const auto r = check_invariants(run_with(rnd, b, 8), b);
  const int d = dir_index(-1, -1);
  EXPECT_EQ(r.rounds[4].a[d], 0);
  EXPECT_EQ(r.rounds[4].phi_q[d], 0);
  EXPECT_EQ(r.rounds[5].a[d], 1);
  EXPECT_EQ(r.rounds[5].phi_q[d], 8);
  EXPECT_EQ(r.rounds[5].corners[d], 2);
}

TEST(Checks, MonitorIsReadOnly) {
  RandomStrategy rnd(5);
  const auto trace = run_with(rnd, Budget::periodic({2, 1}), 40);
  const auto before = trace_to_string(trace);
  check_invariants(trace, Budget::periodic({2, 1}));
  EXPECT_EQ(trace_to_string(trace), before);
}

TEST(Checks, RejectsUnsupportedTraces) {
  GreedyStrategy greedy;
  const auto strong = run(FireState(Topology::Strong, kOrigin), Budget::constant(1), greedy, 5);
  EXPECT_THROW(check_invariants(strong, Budget::constant(1)), std::invalid_argument);
  const std::vector<Point> off{{5, 5}};
  const auto shifted = run(FireState(Topology::Cartesian, off), Budget::constant(1), greedy, 5);
  EXPECT_THROW(check_invariants(shifted, Budget::constant(1)), std::invalid_argument);
  auto bad = run_with(greedy, Budget::constant(1), 6);
  bad.records[2].ignited.push_back({50, 0});
  EXPECT_THROW(check_invariants(bad, Budget::constant(1)), MalformedTrace);
}

TEST(Checks, ReportFormats) {
  GreedyStrategy greedy;
  const auto r = check_invariants(run_with(greedy, Budget::constant(1), 8), Budget::constant(1));
  const auto json = report_json(r);
  EXPECT_NE(json.find("\"rounds\""), std::string::npos);
  EXPECT_NE(json.find("\"checks\""), std::string::npos);
  const auto table = report_table(r);
  for (const char* name : {"A ", "B ", "C ", "D ", "E ", "F "}) EXPECT_NE(table.find(name), std::string::npos);
}
