#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sprrp/instance.hpp"

namespace sprrp {

using NodeId = int;
using EdgeId = int;

inline constexpr NodeId kBaseNode = 0;

enum class NodeKind : std::uint8_t { kBase, kPoiIn, kPoiMid, kPoiOut };

std::string_view to_string(NodeKind kind);

struct EventNode {
  NodeId id = 0;
  NodeKind kind = NodeKind::kBase;
  int poi = -1;  // PoI index, -1 for the base
};

struct TaskEdge {
  EdgeId id = 0;
  NodeId from = 0;
  NodeId to = 0;
  TaskType task = TaskType::kMove;
  double duration = 0.0;
  double draw = 0.0;
  double gain_amp = 0.0;
  double benefit = 0.0;
  // Owning PoI for R/C edges, target PoI for movements, -1 for returns.
  int poi = -1;
};

// Event graph: node 0 is the base, PoI p owns nodes 3p+1 (in), 3p+2 (mid)
// and 3p+3 (out). Edges are sorted by (from, to, task) and their ids are
// their positions.
class ExpandedGraph {
 public:
  const std::vector<EventNode>& nodes() const { return nodes_; }
  const std::vector<TaskEdge>& edges() const { return edges_; }
  const TaskEdge& edge(EdgeId id) const { return edges_.at(static_cast<std::size_t>(id)); }
  std::size_t poi_count() const { return research_edges_.size(); }

  // Outgoing edge ids of a node, ordered by target id then task type.
  std::span<const EdgeId> outgoing_ids(NodeId node) const;

  // {in->mid, mid->out} edge ids per PoI.
  const std::array<EdgeId, 2>& research_edges(int poi) const {
    return research_edges_.at(static_cast<std::size_t>(poi));
  }
  const std::array<EdgeId, 2>& charge_edges(int poi) const {
    return charge_edges_.at(static_cast<std::size_t>(poi));
  }

  std::optional<EdgeId> find_edge(NodeId from, NodeId to, TaskType task) const;

  static NodeId in_node(int poi) { return 3 * poi + 1; }
  static NodeId mid_node(int poi) { return 3 * poi + 2; }
  static NodeId out_node(int poi) { return 3 * poi + 3; }

 private:
  friend ExpandedGraph expand(const Instance& inst);

  std::vector<EventNode> nodes_;
  std::vector<TaskEdge> edges_;
  std::vector<std::vector<EdgeId>> adjacency_;
  std::vector<std::array<EdgeId, 2>> research_edges_;
  std::vector<std::array<EdgeId, 2>> charge_edges_;
};

// Throws std::invalid_argument when a required movement pair is missing.
ExpandedGraph expand(const Instance& inst);

// Throws std::out_of_range for an unknown node.
std::vector<TaskEdge> outgoing(const ExpandedGraph& graph, NodeId node);

std::string to_dot(const ExpandedGraph& graph, const Instance& inst);

}  // namespace sprrp
