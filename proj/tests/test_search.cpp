#include <gtest/gtest.h>

#include "firefight/monitor.hpp"
#include "firefight/search.hpp"
#include "firefight/trace.hpp"

using namespace firefight;

namespace {

SearchConfig cartesian(const Budget& b, std::int64_t horizon) {
  SearchConfig cfg;
  cfg.topology = Topology::Cartesian;
  cfg.budget = b;
  cfg.horizon = horizon;
  return cfg;
}

}  // namespace

TEST(Exhaustive, FourFirefightersCloseTheCartesianSource) {
  const auto r = exhaustive_search(cartesian(Budget::constant(4), 1));
  EXPECT_EQ(r.outcome, SearchOutcome::ControlledFound);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->status, RunStatus::Controlled);
  EXPECT_EQ(r.witness->records.at(0).placed.size(), 4u);
}

TEST(Exhaustive, FourFirefightersCannotCloseTheStrongSource) {
  auto cfg = cartesian(Budget::constant(4), 1);
  cfg.topology = Topology::Strong;
  EXPECT_EQ(exhaustive_search(cfg).outcome, SearchOutcome::ExhaustedNoControl);
}

TEST(Exhaustive, CapCompliantBudgetShortHorizons) {
  for (std::int64_t t = 1; t <= 3; ++t) {
    const auto r = exhaustive_search(cartesian(Budget::periodic({2, 1}), t));
    EXPECT_EQ(r.outcome, SearchOutcome::ExhaustedNoControl);
    ASSERT_TRUE(r.min_rho);
    EXPECT_GE(*r.min_rho, 3 * t);
  }
}

TEST(Exhaustive, SymmetryReductionPreservesResults) {
  for (const auto& [b, t] : std::vector<std::pair<Budget, std::int64_t>>{
           {Budget::periodic({2, 1}), 2}, {Budget::constant(1), 3}, {Budget::constant(3), 2}, {Budget::constant(4), 1}}) {
    auto on = cartesian(b, t);
    auto off = on;
    off.symmetry = false;
    const auto a = exhaustive_search(on);
    const auto z = exhaustive_search(off);
    EXPECT_EQ(a.outcome, z.outcome) << b.describe() << " T=" << t;
    EXPECT_EQ(a.min_rho, z.min_rho) << b.describe() << " T=" << t;
    EXPECT_LE(a.nodes, z.nodes);
  }
}

TEST(Exhaustive, CandidateRadiusDoesNotChangeSmallResults) {
  for (const auto& [b, t] : std::vector<std::pair<Budget, std::int64_t>>{
           {Budget::periodic({2, 1}), 2}, {Budget::constant(1), 3}, {Budget::constant(3), 2}}) {
    auto d2 = cartesian(b, t);
    auto d3 = d2;
    d3.candidate_distance = 3;
    auto all = d2;
    all.candidate_distance.reset();
    const auto x = exhaustive_search(d2);
    const auto y = exhaustive_search(d3);
    const auto z = exhaustive_search(all);
    EXPECT_EQ(x.outcome, y.outcome);
    EXPECT_EQ(x.min_rho, y.min_rho);
    EXPECT_EQ(x.outcome, z.outcome);
    EXPECT_EQ(x.min_rho, z.min_rho);
  }
}

TEST(Exhaustive, EveryLeafIsLegalAndKeepsCheckE) {
  auto cfg = cartesian(Budget::periodic({2, 1}), 2);
  cfg.symmetry = false;
  std::vector<std::vector<std::vector<Point>>> leaves;
  cfg.leaf_observer = [&](const std::vector<std::vector<Point>>& squads) { leaves.push_back(squads); };
  exhaustive_search(cfg);
  ASSERT_FALSE(leaves.empty());
  for (const auto& squads : leaves) {
    const auto trace = witness_trace(cfg, squads);
    const auto report = check_invariants(trace, cfg.budget);
    for (const auto& c : report.checks) {
      if (c.name == "E") {
        EXPECT_TRUE(c.passed());
      }
    }
  }
}

TEST(Exhaustive, ThreadsAgreeWithOneWorker) {
  auto one = cartesian(Budget::constant(1), 3);
  auto two = one;
  two.threads = 2;
  const auto a = exhaustive_search(one);
  const auto b = exhaustive_search(two);
  EXPECT_EQ(a.outcome, b.outcome);
  EXPECT_EQ(a.min_rho, b.min_rho);
}

TEST(Exhaustive, NodeCapIsReported) {
  auto cfg = cartesian(Budget::periodic({2, 1}), 3);
  cfg.node_cap = 1000;
  EXPECT_EQ(exhaustive_search(cfg).outcome, SearchOutcome::NodeCapHit);
}

TEST(Exhaustive, RejectsBadConfigs) {
  auto cfg = cartesian(Budget::constant(1), 0);
  EXPECT_THROW(exhaustive_search(cfg), std::invalid_argument);
  cfg.horizon = 1;
  cfg.candidate_distance = 0;
  EXPECT_THROW(exhaustive_search(cfg), std::invalid_argument);
}

TEST(MinBurnt, ThreeFirefightersLoseTwoPoints) {
  const auto r = min_burnt_search(cartesian(Budget::constant(3), 5));
  ASSERT_EQ(r.outcome, SearchOutcome::ControlledFound);
  EXPECT_EQ(r.min_burnt, 2);
  EXPECT_EQ(r.control_round, 2);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->status, RunStatus::Controlled);
  EXPECT_EQ(replay(*r.witness).burnt().size(), 2u);
}

TEST(MinBurnt, OneFirefighterNeverControls) {
  for (std::int64_t t = 1; t <= 4; ++t) {
    EXPECT_NE(min_burnt_search(cartesian(Budget::constant(1), t)).outcome, SearchOutcome::ControlledFound);
  }
}

TEST(MinBurnt, StrongSourceSealedByEightFirefighters) {
  auto cfg = cartesian(Budget::constant(8), 3);
  cfg.topology = Topology::Strong;
  const auto r = min_burnt_search(cfg);
  ASSERT_EQ(r.outcome, SearchOutcome::ControlledFound);
  EXPECT_EQ(r.min_burnt, 1);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->records.at(0).placed.size(), 8u);
  cfg.budget = Budget::constant(7);
  cfg.horizon = 1;
  EXPECT_NE(min_burnt_search(cfg).outcome, SearchOutcome::ControlledFound);
}

TEST(MinBurnt, BurntLimitPrunes) {
  auto cfg = cartesian(Budget::constant(3), 5);
  cfg.burnt_limit = 2;
  EXPECT_NE(min_burnt_search(cfg).outcome, SearchOutcome::ControlledFound);
}

TEST(Witness, IllegalSquadsThrow) {
  const auto cfg = cartesian(Budget::constant(2), 2);
  EXPECT_THROW(witness_trace(cfg, {{{0, 0}}}), std::exception);
  EXPECT_THROW(witness_trace(cfg, {{{1, 0}, {0, 1}, {-1, 0}}}), std::exception);
}
