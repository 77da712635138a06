#include "sprrp/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "sprrp/format.hpp"

namespace sprrp {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kBase:
      return "base";
    case NodeKind::kPoiIn:
      return "poi_in";
    case NodeKind::kPoiMid:
      return "poi_mid";
    case NodeKind::kPoiOut:
      return "poi_out";
  }
  return "?";
}

std::span<const EdgeId> ExpandedGraph::outgoing_ids(NodeId node) const {
  if (node < 0 || static_cast<std::size_t>(node) >= adjacency_.size()) {
    throw std::out_of_range("unknown node " + std::to_string(node));
  }
  return adjacency_[static_cast<std::size_t>(node)];
}

std::optional<EdgeId> ExpandedGraph::find_edge(NodeId from, NodeId to,
                                               TaskType task) const {
  if (from < 0 || static_cast<std::size_t>(from) >= adjacency_.size()) {
    return std::nullopt;
  }
  for (EdgeId id : adjacency_[static_cast<std::size_t>(from)]) {
    const TaskEdge& e = edges_[static_cast<std::size_t>(id)];
    if (e.to == to && e.task == task) return id;
  }
  return std::nullopt;
}

ExpandedGraph expand(const Instance& inst) {
  ExpandedGraph g;
  const int n = static_cast<int>(inst.pois.size());
  const EnergyParams& energy = inst.energy;

  g.nodes_.push_back({kBaseNode, NodeKind::kBase, -1});
  for (int p = 0; p < n; ++p) {
    g.nodes_.push_back({ExpandedGraph::in_node(p), NodeKind::kPoiIn, p});
    g.nodes_.push_back({ExpandedGraph::mid_node(p), NodeKind::kPoiMid, p});
    g.nodes_.push_back({ExpandedGraph::out_node(p), NodeKind::kPoiOut, p});
  }

  auto movement = [&](std::string_view from, std::string_view to) {
    const MovementSpec* m = inst.movement(from, to);
    if (!m) {
      throw std::invalid_argument("missing movement " + std::string(from) +
                                  " -> " + std::string(to));
    }
    return m;
  };
  auto add_move = [&](NodeId from, NodeId to, const MovementSpec* m, int poi) {
    g.edges_.push_back({0, from, to, TaskType::kMove, m->duration, m->draw,
                        energy.gain(TaskType::kMove), m->benefit, poi});
  };

  for (int p = 0; p < n; ++p) {
    const PoiSpec& spec = inst.pois[static_cast<std::size_t>(p)];
    const NodeId in = ExpandedGraph::in_node(p);
    const NodeId mid = ExpandedGraph::mid_node(p);
    const NodeId out = ExpandedGraph::out_node(p);
    for (auto [from, to] : {std::pair{in, mid}, std::pair{mid, out}}) {
      g.edges_.push_back({0, from, to, TaskType::kResearch,
                          spec.research_duration, spec.research_draw,
                          energy.gain(TaskType::kResearch),
                          spec.research_benefit, p});
      g.edges_.push_back({0, from, to, TaskType::kCharge, spec.charge_duration,
                          spec.charge_draw, energy.gain(TaskType::kCharge),
                          spec.charge_benefit, p});
    }

    add_move(kBaseNode, in, movement(kBaseId, spec.id), p);
    for (int q = 0; q < n; ++q) {
      if (q == p) continue;
      const MovementSpec* m =
          movement(inst.pois[static_cast<std::size_t>(q)].id, spec.id);
      add_move(ExpandedGraph::mid_node(q), in, m, p);
      add_move(ExpandedGraph::out_node(q), in, m, p);
    }
    if (inst.options.return_to_base) {
      const MovementSpec* back = movement(spec.id, kBaseId);
      add_move(mid, kBaseNode, back, -1);
      add_move(out, kBaseNode, back, -1);
    }
  }

  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const TaskEdge& a, const TaskEdge& b) {
              return std::tuple(a.from, a.to, a.task) <
                     std::tuple(b.from, b.to, b.task);
            });
  g.adjacency_.assign(g.nodes_.size(), {});
  g.research_edges_.assign(static_cast<std::size_t>(n), {-1, -1});
  g.charge_edges_.assign(static_cast<std::size_t>(n), {-1, -1});
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    TaskEdge& e = g.edges_[i];
    e.id = static_cast<EdgeId>(i);
    g.adjacency_[static_cast<std::size_t>(e.from)].push_back(e.id);
    if (e.task == TaskType::kMove) continue;
    const std::size_t slot = g.nodes_[static_cast<std::size_t>(e.from)].kind ==
                                     NodeKind::kPoiIn
                                 ? 0
                                 : 1;
    auto& table = e.task == TaskType::kResearch ? g.research_edges_ : g.charge_edges_;
    table[static_cast<std::size_t>(e.poi)][slot] = e.id;
  }
  return g;
}

std::vector<TaskEdge> outgoing(const ExpandedGraph& graph, NodeId node) {
  std::vector<TaskEdge> out;
  for (EdgeId id : graph.outgoing_ids(node)) out.push_back(graph.edge(id));
  return out;
}

std::string to_dot(const ExpandedGraph& graph, const Instance& inst) {
  std::ostringstream os;
  os << "digraph sprrp {\n  rankdir=LR;\n";
  for (const EventNode& v : graph.nodes()) {
    os << "  n" << v.id << " [label=\"";
    if (v.kind == NodeKind::kBase) {
      os << "base";
    } else {
      os << inst.pois[static_cast<std::size_t>(v.poi)].id << ' '
         << to_string(v.kind).substr(4);
    }
    os << "\"];\n";
  }
  for (const TaskEdge& e : graph.edges()) {
    os << "  n" << e.from << " -> n" << e.to << " [label=\"" << to_string(e.task)
       << " tau=" << format_number(e.duration) << " draw=" << format_number(e.draw)
       << " c=" << format_number(e.benefit) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace sprrp
