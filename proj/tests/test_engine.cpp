#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "firefight/budget.hpp"
#include "firefight/engine.hpp"
#include "firefight/render.hpp"
#include "firefight/strategies.hpp"
#include "firefight/trace.hpp"
#include "oracles.hpp"

using namespace firefight;

namespace {

oracle::Cells cells(const PointSet& pts) {
  oracle::Cells out;
  for (auto p : pts) out.insert({p.x, p.y});
  return out;
}

const std::vector<Point> kOrigin{{0, 0}};

RunTrace random_run(Topology topo, const Budget& b, std::uint64_t seed, std::int64_t horizon) {
  RandomStrategy strat(seed);
  return run(FireState(topo, kOrigin), b, strat, horizon);
}

}  // namespace

// --- budget ---

TEST(Budget, ConstantCumulative) { EXPECT_EQ(cumulative(Budget::constant(2), 5), 10); }

TEST(Budget, PeriodicTwoOne) {
  const auto b = Budget::periodic({2, 1});
  EXPECT_EQ(b.cumulative(1), 2);
  EXPECT_EQ(b.cumulative(2), 3);
  EXPECT_EQ(b.cumulative(3), 5);
  EXPECT_EQ(b.cumulative(4), 6);
  for (std::int64_t t = 1; t <= 10000; ++t) EXPECT_LE(2 * b.cumulative(t), 3 * t + 1);
}

TEST(Budget, MessingerPeriodSum) {
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::int64_t> period;
    for (int t = 1; t <= 2 * n + 1; ++t) {
      const int k = t % (2 * n + 1);
      period.push_back(k == 0 || k % 2 == 1 ? 2 : 1);
    }
    EXPECT_EQ(Budget::periodic(period).cumulative(2 * n + 1), 3 * n + 2);
  }
}

TEST(Budget, CumulativeIsNondecreasingFromZero) {
  for (const auto& b : {Budget::constant(0), Budget::periodic({0, 3}), Budget::prefix_periodic({5, 0}, {1}),
                        Budget::table({{3, 2}, {7, 1}})}) {
    EXPECT_EQ(b.cumulative(0), 0);
    for (std::int64_t t = 1; t < 50; ++t) {
      EXPECT_GE(b.at(t), 0);
      EXPECT_EQ(b.cumulative(t), b.cumulative(t - 1) + b.at(t));
    }
  }
}

TEST(Budget, TableIsZeroElsewhere) {
  const auto b = Budget::table({{2, 5}, {4, 1}});
  EXPECT_EQ(b.at(1), 0);
  EXPECT_EQ(b.at(2), 5);
  EXPECT_EQ(b.at(3), 0);
  EXPECT_EQ(b.at(4), 1);
  EXPECT_EQ(b.at(1000), 0);
}

TEST(Budget, ContainmentDefault) {
  for (std::int64_t m = 1; m <= 4; ++m) {
    const auto b = Budget::containment_default(m);
    for (std::int64_t t = 1; t <= 200; ++t) EXPECT_EQ(b.cumulative(t), 3 * t + (t + m - 1) / m);
  }
}

TEST(Budget, SplitHalves) {
  const auto g = Budget::constant(3).split_halves();
  for (std::int64_t t = 1; t <= 8; ++t) EXPECT_EQ(g.at(t), t % 2 == 1 ? 1 : 2);
  const auto f = Budget::periodic({4, 3, 5});
  const auto h = f.split_halves();
  for (std::int64_t k = 1; k <= 12; ++k) {
    EXPECT_EQ(h.at(2 * k - 1), f.at(k) / 2);
    EXPECT_EQ(h.at(2 * k), (f.at(k) + 1) / 2);
  }
}

TEST(Budget, ParseDescribeRoundTrip) {
  for (const char* spec : {"const:4", "periodic:2,1", "prefix:5,0/1,2", "table:1=2,5=3"}) {
    const auto b = Budget::parse(spec);
    EXPECT_EQ(Budget::parse(b.describe()), b) << spec;
  }
  EXPECT_EQ(Budget::parse("const:3").at(17), 3);
  EXPECT_EQ(Budget::parse("prefix:5,0/1").at(2), 0);
  EXPECT_EQ(Budget::parse("prefix:5,0/1").at(3), 1);
}

TEST(Budget, ParseTableFile) {
  const std::string path = ::testing::TempDir() + "budget_table.txt";
  std::ofstream(path) << "# bursts\n1 4\n3 2\n";
  const auto b = Budget::parse("table:" + path);
  EXPECT_EQ(b.at(1), 4);
  EXPECT_EQ(b.at(2), 0);
  EXPECT_EQ(b.at(3), 2);
  EXPECT_EQ(Budget::parse(b.describe()), b);
}

TEST(Budget, RejectsBadSpecs) {
  for (const char* spec : {"const:-1", "periodic:", "bogus:1", "const:x", "table:0=1"}) {
    EXPECT_THROW(Budget::parse(spec), std::invalid_argument) << spec;
  }
}

// --- engine ---

TEST(Engine, SpreadFromOrigin) {
  const auto c = step(FireState(Topology::Cartesian, kOrigin), {}, Budget::constant(0));
  EXPECT_EQ(c.burnt().size(), 5u);
  const auto s = step(FireState(Topology::Strong, kOrigin), {}, Budget::constant(0));
  EXPECT_EQ(s.burnt().size(), 9u);
  EXPECT_EQ(c.round(), 1);
}

TEST(Engine, OneProtectedNeighbor) {
  const std::vector<Point> place{{0, 1}};
  const auto s = step(FireState(Topology::Cartesian, kOrigin), place, Budget::constant(1));
  EXPECT_EQ(cells(s.burnt()), (oracle::Cells{{0, 0}, {1, 0}, {-1, 0}, {0, -1}}));
  EXPECT_TRUE(s.is_protected({0, 1}));
}

TEST(Engine, RejectsIllegalPlacements) {
  const FireState s(Topology::Cartesian, kOrigin);
  const std::vector<Point> on_fire{{0, 0}};
  try {
    step(s, on_fire, Budget::constant(1));
    FAIL();
  } catch (const IllegalPlacement& e) {
    EXPECT_EQ(e.point(), (Point{0, 0}));
  }
  const std::vector<Point> twice{{1, 0}, {1, 0}};
  EXPECT_THROW(step(s, twice, Budget::constant(2)), IllegalPlacement);
  const std::vector<Point> two{{1, 0}, {2, 0}};
  EXPECT_THROW(step(s, two, Budget::constant(1)), IllegalPlacement);
  FireState p = step(s, std::vector<Point>{{5, 5}}, Budget::constant(1));
  EXPECT_THROW(p.protect(std::vector<Point>{{5, 5}}), IllegalPlacement);
}

TEST(Engine, FailedProtectLeavesStateUnchanged) {
  FireState s(Topology::Cartesian, kOrigin);
  const std::vector<Point> bad{{3, 3}, {0, 0}};
  EXPECT_THROW(s.protect(bad), IllegalPlacement);
  EXPECT_FALSE(s.is_protected({3, 3}));
}

TEST(Engine, Controlled) {
  const std::vector<Point> ring{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  EXPECT_TRUE(is_controlled(FireState(Topology::Cartesian, kOrigin, ring)));
  EXPECT_FALSE(is_controlled(FireState(Topology::Strong, kOrigin, ring)));
  EXPECT_TRUE(is_controlled(FireState(Topology::Cartesian)));
}

TEST(Engine, ControlledIffStepDoesNotSpread) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> prot;
    for (auto p : ball({0, 0}, 2, Metric::LInf)) {
      if (p != Point{0, 0} && rng() % 2) prot.push_back(p);
    }
    for (auto topo : {Topology::Cartesian, Topology::Strong, Topology::Triangular}) {
      const std::vector<Point> src{{0, 0}, {0, (rng() % 2) ? 0 : 0}};
      FireState s(topo, std::vector<Point>{{0, 0}}, prot);
      s = step(s, {}, Budget::constant(0));
      const auto next = step(s, {}, Budget::constant(0));
      EXPECT_EQ(is_controlled(s), next.burnt() == s.burnt());
    }
  }
}

TEST(Engine, Endangered) {
  EXPECT_EQ(endangered(FireState(Topology::Cartesian, kOrigin)).size(), 4u);
  EXPECT_EQ(endangered(FireState(Topology::Cartesian, kOrigin, std::vector<Point>{{0, 1}})).size(), 3u);
  const auto b2 = ball({0, 0}, 2, Metric::L1);
  const auto e = endangered(FireState(Topology::Cartesian, b2));
  EXPECT_EQ(e.size(), 12u);
  for (auto p : e) EXPECT_EQ(l1_distance(p, {0, 0}), 3);
}

TEST(Engine, NullRunIsTheMetricBall) {
  for (auto topo : {Topology::Cartesian, Topology::Strong, Topology::Triangular}) {
    NullStrategy null;
    FireState last(topo);
    const char key = topo == Topology::Cartesian ? 'c' : topo == Topology::Strong ? 's' : 't';
    std::int64_t k = 0;
    run(FireState(topo, kOrigin), Budget::constant(0), null, 10, [&](const FireState& s, const RoundRecord& rec) {
      ++k;
      EXPECT_EQ(rec.t, k);
      EXPECT_EQ(cells(s.burnt()), oracle::bfs_fire(key, {{0, 0}}, k));
      last = s;
    });
    EXPECT_EQ(k, 10);
    if (topo != Topology::Triangular) {
      const auto want = ball({0, 0}, 10, natural_metric(topo));
      EXPECT_EQ(last.burnt().size(), want.size());
    }
  }
}

TEST(Engine, RunStatuses) {
  NullStrategy null;
  const auto t = run(FireState(Topology::Cartesian, kOrigin), Budget::constant(0), null, 10);
  EXPECT_EQ(t.status, RunStatus::HorizonReached);
  EXPECT_EQ(t.final_round, 10);
  EXPECT_EQ(t.records.size(), 10u);
  EXPECT_EQ(to_string(t.status), "horizon");

  GreedyStrategy greedy;
  const auto c = run(FireState(Topology::Cartesian, kOrigin), Budget::constant(4), greedy, 10);
  EXPECT_EQ(c.status, RunStatus::Controlled);
  EXPECT_EQ(c.final_round, 1);
}

TEST(Engine, ZeroBudgetNeverControls) {
  for (auto topo : {Topology::Cartesian, Topology::Strong, Topology::Triangular}) {
    GreedyStrategy greedy;
    EXPECT_EQ(run(FireState(topo, kOrigin), Budget::constant(0), greedy, 30).status, RunStatus::HorizonReached);
  }
}

TEST(Engine, MonotoneAndDisjoint) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RandomStrategy strat(seed);
    FireState prev(Topology::Strong, kOrigin);
    run(prev, Budget::constant(5), strat, 25, [&](const FireState& s, const RoundRecord&) {
      for (auto p : prev.burnt()) EXPECT_TRUE(s.is_burnt(p));
      for (auto p : prev.protected_points()) EXPECT_TRUE(s.is_protected(p));
      for (auto p : s.burnt()) EXPECT_FALSE(s.is_protected(p));
      prev = s;
    });
  }
}

TEST(Engine, StrategyOverBudgetFailsTheRun) {
  struct Greedy : Strategy {
    std::string id() const override { return "overeager"; }
    std::vector<Point> next_placements(const FireState& s, std::int64_t) override { return s.endangered(); }
  } strat;
  const auto t = run(FireState(Topology::Cartesian, kOrigin), Budget::constant(1), strat, 5);
  EXPECT_EQ(t.status, RunStatus::StrategyFailed);
  EXPECT_TRUE(t.records.empty());
  EXPECT_FALSE(t.error.empty());
}

TEST(Engine, PlacementAwayFromFireIsLegal) {
  const std::vector<Point> far{{100, 100}};
  const auto s = step(FireState(Topology::Cartesian, kOrigin), far, Budget::constant(1));
  EXPECT_TRUE(s.is_protected({100, 100}));
}

// --- trace ---

TEST(Trace, RoundTripAndReplay) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto trace = random_run(Topology::Cartesian, Budget::periodic({2, 1}), seed, 40);
    const auto text = trace_to_string(trace);
    const auto back = read_trace_string(text);
    EXPECT_EQ(back, trace);
    EXPECT_EQ(trace_to_string(back), text);
    FireState direct(Topology::Cartesian, kOrigin);
    std::int64_t k = 0;
    replay(back, [&](const FireState& s, const RoundRecord& rec, ReplayStage stage) {
      if (stage != ReplayStage::Spread) return;
      direct.protect(rec.placed);
      direct.spread();
      ++k;
      EXPECT_EQ(s.burnt(), direct.burnt());
      EXPECT_EQ(s.protected_points(), direct.protected_points());
    });
    EXPECT_EQ(k, 40);
  }
}

TEST(Trace, ReplayStrategyReproducesTrace) {
  const auto plan = wall_plan(1, 1);
  ContainmentStrategy strat(plan);
  const auto b = Budget::containment_default(1);
  const auto original = run(FireState(Topology::Strong, plan.source()), b, strat, 100);
  ASSERT_EQ(original.status, RunStatus::Controlled);
  ReplayStrategy replayed(original);
  auto again = run(FireState(Topology::Strong, plan.source()), b, replayed, 100);
  again.strategy = original.strategy;
  EXPECT_EQ(again, original);
}

TEST(Trace, ReplayStrategyRejectsIllegalMoves) {
  auto trace = random_run(Topology::Cartesian, Budget::constant(2), 3, 5);
  trace.records[2].placed = {{0, 0}};
  ReplayStrategy bad(trace);
  const auto out = run(FireState(Topology::Cartesian, kOrigin), Budget::constant(2), bad, 5);
  EXPECT_EQ(out.status, RunStatus::StrategyFailed);
  EXPECT_NE(out.error.find("round 3"), std::string::npos);
}

TEST(Trace, TeleportingFireIsMalformed) {
  auto trace = random_run(Topology::Cartesian, Budget::constant(1), 9, 6);
  trace.records[3].ignited.push_back({40, 40});
  try {
    replay(read_trace_string(trace_to_string(trace)));
    FAIL();
  } catch (const MalformedTrace& e) {
    EXPECT_EQ(e.line(), 5);  // header is line 1
  }
}

TEST(Trace, GarbageIsMalformed) {
  EXPECT_THROW(read_trace_string("{not json\n"), MalformedTrace);
  EXPECT_THROW(read_trace_string(""), MalformedTrace);
  auto trace = random_run(Topology::Cartesian, Budget::constant(1), 9, 3);
  auto text = trace_to_string(trace);
  text.insert(text.find('\n') + 1, "{\"t\":7}\n");
  EXPECT_THROW(replay(read_trace_string(text)), MalformedTrace);
}

TEST(Trace, StateAt) {
  const auto trace = random_run(Topology::Strong, Budget::constant(3), 4, 10);
  EXPECT_EQ(state_at(trace, 0).burnt().size(), 1u);
  EXPECT_EQ(state_at(trace, 10).burnt(), replay(trace).burnt());
  EXPECT_THROW(state_at(trace, 11), std::out_of_range);
}

// --- render ---

TEST(Render, SingleSource) {
  const FireState s(Topology::Cartesian, kOrigin);
  EXPECT_EQ(render_text(s, activity_window(s)), "...\n.#.\n...\n");
}

TEST(Render, NorthIsUp) {
  const FireState s(Topology::Cartesian, kOrigin, std::vector<Point>{{0, 1}});
  EXPECT_EQ(render_text(s, Box{-1, -1, 1, 1}), ".F.\n.#.\n...\n");
}

TEST(Render, EmptyWindow) {
  const FireState s(Topology::Cartesian, kOrigin);
  EXPECT_EQ(render_text(s, Box{10, 10, 12, 11}), "...\n...\n");
}

TEST(Render, Graymap) {
  const FireState s(Topology::Cartesian, kOrigin, std::vector<Point>{{1, 0}});
  const auto img = render_pgm(s, Box{0, 0, 1, 0}, 2);
  const std::string header = "P5\n4 2\n255\n";
  ASSERT_EQ(img.substr(0, header.size()), header);
  const auto px = img.substr(header.size());
  ASSERT_EQ(px.size(), 8u);
  EXPECT_EQ(static_cast<unsigned char>(px[0]), 0);
  EXPECT_EQ(static_cast<unsigned char>(px[2]), 128);
  EXPECT_EQ(static_cast<unsigned char>(px[7]), 128);
}
