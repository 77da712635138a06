#include <gtest/gtest.h>

#include <stdexcept>

#include "sprrp/graph.hpp"
#include "support/paths.hpp"
#include "support/random_instance.hpp"

namespace sprrp {
namespace {

TEST(Expand, FixtureCounts) {
  const ExpandedGraph g = expand(testing::fixture());
  EXPECT_EQ(g.nodes().size(), 7u);
  EXPECT_EQ(g.edges().size(), 18u);
  int internal = 0, from_base = 0, between = 0, returns = 0;
  for (const TaskEdge& e : g.edges()) {
    if (e.task != TaskType::kMove) ++internal;
    else if (e.from == kBaseNode) ++from_base;
    else if (e.to == kBaseNode) ++returns;
    else ++between;
  }
  EXPECT_EQ(internal, 8);
  EXPECT_EQ(from_base, 2);
  EXPECT_EQ(between, 4);
  EXPECT_EQ(returns, 4);
}

TEST(Expand, EmptyInstance) {
  Instance inst;
  inst.fleet.battery_capacity = 1;
  inst.t_max = 1;
  const ExpandedGraph g = expand(inst);
  EXPECT_EQ(g.nodes().size(), 1u);
  EXPECT_TRUE(g.edges().empty());
  EXPECT_TRUE(outgoing(g, kBaseNode).empty());
}

TEST(Expand, NodeLayout) {
  const ExpandedGraph g = expand(testing::fixture());
  EXPECT_EQ(g.nodes()[0].kind, NodeKind::kBase);
  for (int p = 0; p < 2; ++p) {
    EXPECT_EQ(g.nodes()[ExpandedGraph::in_node(p)].kind, NodeKind::kPoiIn);
    EXPECT_EQ(g.nodes()[ExpandedGraph::mid_node(p)].kind, NodeKind::kPoiMid);
    EXPECT_EQ(g.nodes()[ExpandedGraph::out_node(p)].kind, NodeKind::kPoiOut);
    EXPECT_EQ(g.nodes()[ExpandedGraph::out_node(p)].poi, p);
  }
}

TEST(Outgoing, Examples) {
  const ExpandedGraph g = expand(testing::fixture());
  const auto base = outgoing(g, kBaseNode);
  ASSERT_EQ(base.size(), 2u);
  EXPECT_EQ(base[0].to, ExpandedGraph::in_node(0));
  EXPECT_EQ(base[1].to, ExpandedGraph::in_node(1));
  const auto in1 = outgoing(g, ExpandedGraph::in_node(0));
  ASSERT_EQ(in1.size(), 2u);
  EXPECT_EQ(in1[0].task, TaskType::kResearch);
  EXPECT_EQ(in1[1].task, TaskType::kCharge);
  EXPECT_EQ(in1[0].to, ExpandedGraph::mid_node(0));

  Instance open = testing::fixture();
  open.options.return_to_base = false;
  const ExpandedGraph go = expand(open);
  const auto out1 = outgoing(go, ExpandedGraph::out_node(0));
  ASSERT_EQ(out1.size(), 1u);
  EXPECT_EQ(out1[0].to, ExpandedGraph::in_node(1));
  EXPECT_EQ(go.edges().size(), 14u);
}

TEST(Outgoing, UnknownNodeThrows) {
  const ExpandedGraph g = expand(testing::fixture());
  EXPECT_THROW(outgoing(g, 7), std::out_of_range);
  EXPECT_THROW(outgoing(g, -1), std::out_of_range);
}

TEST(Expand, MissingMovementThrows) {
  Instance inst = testing::fixture();
  inst.movements.erase(inst.movements.begin() + 3);
  EXPECT_THROW(expand(inst), std::invalid_argument);
}

TEST(Expand, StructuralInvariants) {
  testing::InstanceGenerator gen(4);
  for (int i = 0; i < 50; ++i) {
    const Instance inst = gen.next();
    const ExpandedGraph g = expand(inst);
    const auto n = inst.pois.size();
    ASSERT_EQ(g.nodes().size(), 3 * n + 1);
    for (std::size_t id = 0; id < g.edges().size(); ++id) {
      const TaskEdge& e = g.edges()[id];
      EXPECT_EQ(e.id, static_cast<EdgeId>(id));
      EXPECT_GT(e.duration, 0);
      if (id > 0) {
        const TaskEdge& prev = g.edges()[id - 1];
        EXPECT_TRUE(std::tie(prev.from, prev.to, prev.task) < std::tie(e.from, e.to, e.task));
      }
      const EventNode& from = g.nodes()[e.from];
      const EventNode& to = g.nodes()[e.to];
      if (e.task == TaskType::kMove) {
        EXPECT_TRUE(to.kind == NodeKind::kPoiIn || to.kind == NodeKind::kBase);
        EXPECT_NE(from.kind, NodeKind::kPoiIn);
        const std::string a = from.poi < 0 ? "base" : inst.pois[from.poi].id;
        const std::string b = to.poi < 0 ? "base" : inst.pois[to.poi].id;
        const MovementSpec* m = inst.movement(a, b);
        ASSERT_NE(m, nullptr);
        EXPECT_EQ(e.duration, m->duration);
        EXPECT_EQ(e.draw, m->draw);
        EXPECT_EQ(e.benefit, m->benefit);
        EXPECT_EQ(e.gain_amp, inst.energy.gain(TaskType::kMove));
      } else {
        EXPECT_EQ(from.poi, to.poi);
        const PoiSpec& p = inst.pois[from.poi];
        const bool r = e.task == TaskType::kResearch;
        EXPECT_EQ(e.duration, r ? p.research_duration : p.charge_duration);
        EXPECT_EQ(e.draw, r ? p.research_draw : p.charge_draw);
        EXPECT_EQ(e.benefit, r ? p.research_benefit : p.charge_benefit);
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      const auto& r = g.research_edges(static_cast<int>(p));
      const auto& c = g.charge_edges(static_cast<int>(p));
      EXPECT_EQ(g.edge(r[0]).task, TaskType::kResearch);
      EXPECT_EQ(g.edge(r[1]).from, ExpandedGraph::mid_node(static_cast<int>(p)));
      EXPECT_EQ(g.edge(c[0]).task, TaskType::kCharge);
      EXPECT_EQ(g.edge(c[1]).to, ExpandedGraph::out_node(static_cast<int>(p)));
      // Reachable from base only through its own in-node.
      EXPECT_TRUE(g.find_edge(kBaseNode, ExpandedGraph::in_node(static_cast<int>(p)), TaskType::kMove));
    }
    std::size_t adjacency_total = 0;
    for (const EventNode& v : g.nodes()) {
      for (EdgeId id : g.outgoing_ids(v.id)) EXPECT_EQ(g.edge(id).from, v.id);
      adjacency_total += g.outgoing_ids(v.id).size();
    }
    EXPECT_EQ(adjacency_total, g.edges().size());
  }
}

TEST(ToDot, ListsEveryNodeAndEdge) {
  const Instance inst = testing::fixture();
  const ExpandedGraph g = expand(inst);
  const std::string dot = to_dot(g, inst);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  std::size_t arrows = 0;
  for (std::size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 2)) ++arrows;
  EXPECT_EQ(arrows, 18u);
  EXPECT_NE(dot.find("P2 mid"), std::string::npos);
}

}  // namespace
}  // namespace sprrp
