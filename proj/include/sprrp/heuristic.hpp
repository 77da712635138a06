#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sprrp/graph.hpp"
#include "sprrp/instance.hpp"
#include "sprrp/solution.hpp"

namespace sprrp {

// How a vehicle works a PoI once it has entered the gadget.
enum class VisitMode : std::uint8_t {
  kResearch,
  kChargeResearch,
  kResearchCharge,
  kChargeOnly,
};

struct PlannedVisit {
  int poi = 0;
  VisitMode mode = VisitMode::kResearch;

  bool operator==(const PlannedVisit&) const = default;
};

// Per-vehicle PoI sequences; movements and returns are implied.
using Plan = std::vector<std::vector<PlannedVisit>>;

enum class MoveKind : std::uint8_t {
  kToggleCharge,
  kInsertPoi,
  kRelocate,
  kReorder2Opt,
  kSwapBetweenVehicles,
  kRemovePoi,
};

// Operand meaning depends on kind:
//   toggle-charge: (vehicle, position) gets `mode`
//   insert-poi:    `poi` with `mode` at (vehicle, position)
//   relocate:      (vehicle, position) moves to (other_vehicle, other_position)
//   reorder-2opt:  positions [position, other_position] of vehicle reversed
//   swap:          (vehicle, position) <-> (other_vehicle, other_position)
//   remove-poi:    (vehicle, position) dropped
struct Move {
  MoveKind kind = MoveKind::kToggleCharge;
  int vehicle = 0;
  int position = 0;
  int other_vehicle = 0;
  int other_position = 0;
  int poi = -1;
  VisitMode mode = VisitMode::kResearch;
};

// Throws std::out_of_range when the operands do not address the plan.
Plan apply_move(const Plan& plan, const Move& move);

// Timed schedule of a plan, or nullopt when some task is infeasible.
std::optional<Solution> realize(const Instance& inst, const ExpandedGraph& graph,
                                const Plan& plan);

Plan plan_of(const Solution& sol, const ExpandedGraph& graph);

// Repeated best insertion by added benefit per added sol. When a PoI does not
// fit as is, one earlier research-only visit of the same route may be given a
// charge task to make room.
Solution greedy_construct(const Instance& inst, std::uint64_t seed);

// First-improvement descent over move kinds in the order toggle-charge,
// insert, relocate, 2-opt, swap, remove, then a compound move that drops at
// most one visit and inserts one or two PoIs. Feasible neighbours get their
// visit modes improved before comparison. Restarts after every accepted move.
// `budget` caps the number of neighbours evaluated. Throws
// std::invalid_argument if `start` is not feasible.
Solution local_search(const Instance& inst, const Solution& start,
                      std::uint64_t budget, std::uint64_t seed);

}  // namespace sprrp
