#include <gtest/gtest.h>

#include <stdexcept>

#include "sprrp/exact.hpp"
#include "sprrp/graph.hpp"
#include "sprrp/propagation.hpp"
#include "support/paths.hpp"

namespace sprrp {
namespace {

Instance unit_gain_fixture(double battery) {
  Instance inst = testing::fixture_with_battery(battery);
  inst.energy.gain_amplitude = {1, 1, 1};
  return inst;
}

TEST(ApplyEdge, MovementFromBase) {
  for (double battery : {10.0, 5.5, 5.0}) {
    const Instance inst = unit_gain_fixture(battery);
    const ExpandedGraph g = expand(inst);
    const TaskEdge& e = g.edge(*g.find_edge(kBaseNode, ExpandedGraph::in_node(0), TaskType::kMove));
    const auto next = apply_edge(initial_state(inst), e, EdgeLimits::from(inst));
    if (battery >= 5.5) {
      ASSERT_TRUE(next.has_value());
      EXPECT_EQ(next->t, 1);
      EXPECT_EQ(next->b, battery - 5.5);
      EXPECT_EQ(next->node, ExpandedGraph::in_node(0));
      EXPECT_TRUE(next->visited.contains(0));
    } else {
      EXPECT_FALSE(next.has_value());
    }
  }
}

TEST(ApplyEdge, ZeroDrawEdge) {
  VehicleState s;
  s.b = 3;
  s.t = 0.4;
  s.visited = s.done_research = s.done_charge = PoiSet(1);
  const TaskEdge e{0, kBaseNode, 1, TaskType::kMove, 0.1, 0.0, 0.0, 0.0, 0};
  const auto next = apply_edge(s, e, {10, 5, true});
  ASSERT_TRUE(next.has_value());
  EXPECT_EQ(next->b, 3);
  EXPECT_EQ(next->t, 0.4 + 0.1);
}

TEST(ApplyEdge, HorizonBound) {
  VehicleState s;
  s.b = 3;
  s.t = 0.95;
  s.visited = s.done_research = s.done_charge = PoiSet(1);
  const TaskEdge e{0, kBaseNode, 1, TaskType::kMove, 0.1, 0.0, 0.0, 0.0, 0};
  EXPECT_FALSE(apply_edge(s, e, {10, 1, true}).has_value());
  EXPECT_TRUE(apply_edge(s, e, {10, 1.05, true}).has_value());
}

TEST(ApplyEdge, DurationScaleApplies) {
  VehicleState s;
  s.b = 3;
  s.visited = s.done_research = s.done_charge = PoiSet(1);
  const TaskEdge e{0, kBaseNode, 1, TaskType::kMove, 0.2, 1.0, 0.0, 0.0, 0};
  const auto next = apply_edge(s, e, {10, 5, true}, 1.5);
  ASSERT_TRUE(next.has_value());
  EXPECT_DOUBLE_EQ(next->t, 0.3);
  EXPECT_DOUBLE_EQ(next->b, 3 - 0.3);
}

TEST(ApplyEdge, ClampsAtCapacity) {
  const Instance inst = testing::fixture_with_battery(4);
  const ExpandedGraph g = expand(inst);
  const auto limits = EdgeLimits::from(inst);
  auto s = apply_edge(initial_state(inst), g.edge(g.outgoing_ids(kBaseNode)[0]), limits);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->b, 2.5);  // 4 + 9 * 0.5 - 6
  const auto charged = apply_edge(*s, g.edge(g.charge_edges(0)[0]), limits);
  ASSERT_TRUE(charged.has_value());
  EXPECT_EQ(charged->b, 4);  // 2.5 + 3.25 - 1 capped
}

TEST(ApplyEdge, RepeatedTasksAndReentryForbidden) {
  const Instance inst = testing::fixture_with_battery(20);
  const ExpandedGraph g = expand(inst);
  const auto limits = EdgeLimits::from(inst);
  auto s = apply_edge(initial_state(inst), g.edge(g.outgoing_ids(kBaseNode)[0]), limits);
  s = apply_edge(*s, g.edge(g.research_edges(0)[0]), limits);
  ASSERT_TRUE(s.has_value());
  EXPECT_FALSE(apply_edge(*s, g.edge(g.research_edges(0)[1]), limits).has_value());
  s = apply_edge(*s, g.edge(g.charge_edges(0)[1]), limits);
  ASSERT_TRUE(s.has_value());
  s = apply_edge(*s, g.edge(*g.find_edge(s->node, ExpandedGraph::in_node(1), TaskType::kMove)), limits);
  ASSERT_TRUE(s.has_value());
  s = apply_edge(*s, g.edge(g.research_edges(1)[0]), limits);
  ASSERT_TRUE(s.has_value());
  EXPECT_FALSE(apply_edge(*s, g.edge(*g.find_edge(s->node, ExpandedGraph::in_node(0), TaskType::kMove)), limits)
                   .has_value());
  s = apply_edge(*s, g.edge(*g.find_edge(s->node, kBaseNode, TaskType::kMove)), limits);
  ASSERT_TRUE(s.has_value());
  EXPECT_TRUE(can_terminate(*s, inst));
  EXPECT_FALSE(apply_edge(*s, g.edge(g.outgoing_ids(kBaseNode)[1]), limits).has_value());
}

TEST(ApplyEdge, ChargeOnlyVisitGate) {
  Instance inst = testing::fixture_with_battery(20);
  inst.options.allow_charge_only_visit = false;
  const ExpandedGraph g = expand(inst);
  const auto limits = EdgeLimits::from(inst);
  auto s = apply_edge(initial_state(inst), g.edge(g.outgoing_ids(kBaseNode)[0]), limits);
  s = apply_edge(*s, g.edge(g.charge_edges(0)[0]), limits);
  ASSERT_TRUE(s.has_value());
  EXPECT_FALSE(apply_edge(*s, g.edge(*g.find_edge(s->node, kBaseNode, TaskType::kMove)), limits).has_value());
  EXPECT_TRUE(apply_edge(*s, g.edge(g.research_edges(0)[1]), limits).has_value());
}

TEST(ApplyEdge, EdgeMismatchThrows) {
  const Instance inst = testing::fixture();
  const ExpandedGraph g = expand(inst);
  EXPECT_THROW(apply_edge(initial_state(inst), g.edge(g.research_edges(0)[0]), EdgeLimits::from(inst)),
               std::invalid_argument);
}

TEST(Audit, AcceptsSolverOutputAndCatchesTampering) {
  const Instance inst = testing::fixture_with_battery(6);
  const ExpandedGraph g = expand(inst);
  Solution sol = solve_exact(inst);
  EXPECT_TRUE(audit(sol, g, inst).empty());

  Solution wrong_battery = sol;
  wrong_battery.routes[0].tasks[1].battery_after += 1e-12;
  EXPECT_FALSE(audit(wrong_battery, g, inst).empty());
  EXPECT_TRUE(audit(wrong_battery, g, inst, 1e-9).empty());

  Solution wrong_objective = sol;
  wrong_objective.objective += 1;
  EXPECT_FALSE(audit(wrong_objective, g, inst).empty());

  Solution unfinished = sol;
  unfinished.routes[0].tasks.pop_back();
  EXPECT_FALSE(audit(unfinished, g, inst).empty());
}

}  // namespace
}  // namespace sprrp
