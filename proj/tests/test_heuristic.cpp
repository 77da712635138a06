#include <gtest/gtest.h>

#include <stdexcept>

#include "sprrp/exact.hpp"
#include "sprrp/graph.hpp"
#include "sprrp/heuristic.hpp"
#include "sprrp/propagation.hpp"
#include "support/paths.hpp"
#include "support/random_instance.hpp"

namespace sprrp {
namespace {

using VM = VisitMode;

TEST(Greedy, ZeroPois) {
  Instance inst;
  inst.fleet.battery_capacity = 1;
  inst.t_max = 1;
  const Solution sol = greedy_construct(inst, 0);
  EXPECT_EQ(sol.objective, 0);
  EXPECT_EQ(sol.routes.size(), 1u);
}

TEST(Greedy, FixtureRegimes) {
  EXPECT_EQ(greedy_construct(testing::fixture_with_battery(12), 0).objective, 2);
  EXPECT_EQ(greedy_construct(testing::fixture_with_battery(5), 0).objective, 1);
  EXPECT_EQ(greedy_construct(testing::fixture_with_battery(4), 0).objective, 1);
}

TEST(Greedy, FeasibleAndDeterministic) {
  testing::InstanceGenerator gen(41);
  for (int i = 0; i < 40; ++i) {
    const Instance inst = gen.next();
    const Solution a = greedy_construct(inst, 7);
    EXPECT_TRUE(audit(a, expand(inst), inst).empty()) << i;
    EXPECT_EQ(a, greedy_construct(inst, 7));
  }
}

TEST(LocalSearch, OptimalStartKeepsObjective) {
  const Instance inst = testing::fixture_with_battery(8);
  const Solution start = solve_exact(inst);
  EXPECT_EQ(local_search(inst, start, 10'000, 0).objective, start.objective);
}

TEST(LocalSearch, ZeroBudgetReturnsStart) {
  const Instance inst = testing::fixture_with_battery(8);
  const Solution start = greedy_construct(inst, 0);
  EXPECT_EQ(local_search(inst, start, 0, 0), start);
}

TEST(LocalSearch, RejectsInfeasibleStart) {
  const Instance inst = testing::fixture_with_battery(8);
  Solution start = solve_exact(inst);
  start.routes[0].tasks[0].battery_after += 3;
  EXPECT_THROW(local_search(inst, start, 100, 0), std::invalid_argument);
}

TEST(LocalSearch, ImprovesEmptyStartAndStaysBelowExact) {
  testing::InstanceGenerator gen(42);
  for (int i = 0; i < 40; ++i) {
    const Instance inst = gen.next();
    const Solution start = empty_solution(inst, SolveStatus::kFeasible);
    const Solution improved = local_search(inst, start, 100'000, 1);
    EXPECT_GE(improved.objective, start.objective);
    EXPECT_LE(improved.objective, solve_exact(inst).objective) << i;
    EXPECT_TRUE(audit(improved, expand(inst), inst).empty()) << i;
    EXPECT_EQ(improved, local_search(inst, start, 100'000, 1));
  }
}

// Instance 196 of the acceptance stream: neither PoI fits alone, the pair
// does, so greedy finds nothing and only the compound move gets there.
TEST(LocalSearch, PairOnlyFeasibleTogether) {
  testing::InstanceGenerator gen(20240611);
  Instance inst;
  for (int i = 0; i <= 196; ++i) inst = gen.next();
  const Solution start = greedy_construct(inst, 0);
  ASSERT_EQ(start.objective, 0);
  const Solution sol = local_search(inst, start, 1'000'000, 0);
  EXPECT_EQ(sol.objective, solve_exact(inst).objective);
  EXPECT_TRUE(audit(sol, expand(inst), inst).empty());
}

TEST(LocalSearch, SixPoiInstanceWithinExact) {
  testing::InstanceGenerator gen(43, {6, 1});
  int checked = 0;
  for (int i = 0; i < 200 && checked < 3; ++i) {
    const Instance inst = gen.next();
    if (inst.pois.size() != 6) continue;
    ++checked;
    const Solution exact = solve_exact(inst);
    ASSERT_EQ(exact.status, SolveStatus::kOptimal);
    const Solution h = local_search(inst, greedy_construct(inst, 0), 100'000, 0);
    EXPECT_LE(h.objective, exact.objective);
    EXPECT_TRUE(audit(h, expand(inst), inst).empty());
  }
  EXPECT_EQ(checked, 3);
}

TEST(ApplyMove, EachKind) {
  const Plan plan = {{{0, VM::kResearch}, {1, VM::kChargeResearch}, {2, VM::kResearch}},
                     {{3, VM::kResearch}}};
  Move m;
  m.kind = MoveKind::kToggleCharge;
  m.position = 0;
  m.mode = VM::kResearchCharge;
  EXPECT_EQ(apply_move(plan, m)[0][0].mode, VM::kResearchCharge);

  m = Move{};
  m.kind = MoveKind::kInsertPoi;
  m.vehicle = 1;
  m.position = 1;
  m.poi = 4;
  EXPECT_EQ(apply_move(plan, m)[1], (std::vector<PlannedVisit>{{3, VM::kResearch}, {4, VM::kResearch}}));

  m = Move{};
  m.kind = MoveKind::kRelocate;
  m.position = 1;
  m.other_vehicle = 1;
  m.other_position = 0;
  const Plan moved = apply_move(plan, m);
  EXPECT_EQ(moved[0].size(), 2u);
  EXPECT_EQ(moved[1][0].poi, 1);

  m = Move{};
  m.kind = MoveKind::kReorder2Opt;
  m.position = 0;
  m.other_position = 2;
  const Plan reversed = apply_move(plan, m);
  EXPECT_EQ(reversed[0][0].poi, 2);
  EXPECT_EQ(reversed[0][2].poi, 0);

  m = Move{};
  m.kind = MoveKind::kSwapBetweenVehicles;
  m.position = 2;
  m.other_vehicle = 1;
  m.other_position = 0;
  const Plan swapped = apply_move(plan, m);
  EXPECT_EQ(swapped[0][2].poi, 3);
  EXPECT_EQ(swapped[1][0].poi, 2);

  m = Move{};
  m.kind = MoveKind::kRemovePoi;
  m.position = 1;
  EXPECT_EQ(apply_move(plan, m)[0].size(), 2u);

  m.position = 7;
  EXPECT_THROW(apply_move(plan, m), std::out_of_range);
  m.vehicle = 5;
  m.position = 0;
  EXPECT_THROW(apply_move(plan, m), std::out_of_range);
}

TEST(Realize, RoundTripsThroughPlan) {
  const Instance inst = testing::fixture_with_battery(7);
  const ExpandedGraph g = expand(inst);
  const Solution sol = solve_exact(inst);
  const auto again = realize(inst, g, plan_of(sol, g));
  ASSERT_TRUE(again.has_value());
  EXPECT_EQ(again->routes, sol.routes);
  EXPECT_EQ(again->objective, sol.objective);
}

TEST(Realize, InfeasiblePlan) {
  const Instance inst = testing::fixture_with_battery(4);
  const ExpandedGraph g = expand(inst);
  EXPECT_FALSE(realize(inst, g, {{{1, VM::kResearch}}}).has_value());
}

}  // namespace
}  // namespace sprrp
