#pragma once

#include <cstdint>
#include <vector>

#include "sprrp/graph.hpp"
#include "sprrp/instance.hpp"
#include "sprrp/propagation.hpp"
#include "sprrp/solution.hpp"

namespace sprrp {

enum class BranchOrder : std::uint8_t { kBenefitDensity, kNearest, kInputOrder };

struct SolverConfig {
  std::uint64_t node_budget = 200'000'000;
  double time_budget_seconds = 600.0;
  bool enable_dominance = true;
  BranchOrder branching = BranchOrder::kBenefitDensity;
};

// Partial route set: vehicles before `active` are closed, vehicles after it
// have not left the base.
struct SearchState {
  std::vector<VehicleState> vehicles;
  int active = 0;
  PoiSet visited;  // union over vehicles
  double benefit = 0.0;
};

SearchState root_state(const Instance& inst);

// Admissible bound on the objective of any completion of `st`: collected
// benefit plus the research, charge and best entering-movement benefit of
// every unvisited PoI, the unfinished tasks at the active vehicle's PoI and
// one best return per vehicle still out.
double upper_bound(const SearchState& st, const Instance& inst);

// Whether s1 makes s2 redundant. Only states at the same node with equal
// visited and done sets compare. Requires s1.t <= s2.t and s1.b >= s2.b, and,
// unless `phase_invariant`, a whole number of sols between the two times:
// solar gain depends on the time of day and no schedule can idle, so an
// earlier state is not in general at least as good.
bool dominates(const VehicleState& s1, const VehicleState& s2,
               bool phase_invariant);

// True when energy deltas of every edge are independent of the start time
// (no solar gain, or every scaled duration is a whole number of sols).
bool phase_invariant(const Instance& inst, const ExpandedGraph& graph);

Solution solve_exact(const Instance& inst, const SolverConfig& cfg = {});

}  // namespace sprrp
