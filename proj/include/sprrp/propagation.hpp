#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sprrp/graph.hpp"
#include "sprrp/instance.hpp"
#include "sprrp/solution.hpp"

namespace sprrp {

// Small dynamic bitset over PoI indices.
class PoiSet {
 public:
  PoiSet() = default;
  explicit PoiSet(std::size_t poi_count) : words_((poi_count + 63) / 64, 0) {}

  bool contains(int poi) const {
    const auto i = static_cast<std::size_t>(poi);
    return (words_[i / 64] >> (i % 64)) & 1u;
  }
  void insert(int poi) {
    const auto i = static_cast<std::size_t>(poi);
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  bool empty() const;
  std::size_t hash() const;

  bool operator==(const PoiSet&) const = default;

 private:
  std::vector<std::uint64_t> words_;
};

// Position of one vehicle after a chain of tasks.
struct VehicleState {
  NodeId node = kBaseNode;
  double t = 0.0;
  double b = 0.0;
  PoiSet visited;        // PoIs entered by this vehicle
  PoiSet done_research;  // PoIs where this vehicle researched
  PoiSet done_charge;    // PoIs where this vehicle charged

  bool operator==(const VehicleState&) const = default;
};

VehicleState initial_state(const Instance& inst);

struct EdgeLimits {
  double capacity = 0.0;  // B
  double t_max = 0.0;
  bool allow_charge_only_visit = true;

  static EdgeLimits from(const Instance& inst) {
    return {inst.fleet.battery_capacity, inst.t_max,
            inst.options.allow_charge_only_visit};
  }
};

// One task of a vehicle: t advances by the scaled duration, the battery by
// the energy delta and is then capped at B. Returns nullopt when the battery
// would go negative, t_max is passed, a PoI is re-entered, a research or
// charge task repeats at one PoI, the base is left twice, or a forbidden
// charge-only visit is left. Throws std::invalid_argument if the edge does
// not start at s.node.
std::optional<VehicleState> apply_edge(const VehicleState& s, const TaskEdge& e,
                                       const EdgeLimits& limits,
                                       double duration_scale = 1.0);

// Whether a route may end in state s.
bool can_terminate(const VehicleState& s, const Instance& inst);

// Replays every route of `sol` through apply_edge and returns the
// discrepancies; empty means the recorded times, batteries and objective are
// reproduced exactly (or within `tolerance` when it is positive).
std::vector<std::string> audit(const Solution& sol, const ExpandedGraph& graph,
                               const Instance& inst, double tolerance = 0.0);

}  // namespace sprrp
