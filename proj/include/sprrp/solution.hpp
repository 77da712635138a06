#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "sprrp/graph.hpp"
#include "sprrp/instance.hpp"

namespace sprrp {

// Feasibility slack shared by every solver: a battery level within
// kEnergyEps below zero, or an event within kTimeEps past t_max, still counts
// as feasible.
inline constexpr double kEnergyEps = 1e-9;
inline constexpr double kTimeEps = 1e-9;
inline constexpr double kBenefitEps = 1e-9;

enum class SolveStatus : std::uint8_t { kOptimal, kFeasible, kInfeasibleEmpty };

std::string_view to_string(SolveStatus status);

struct ScheduledTask {
  EdgeId edge = 0;
  TaskType task = TaskType::kMove;
  NodeId from = 0;
  NodeId to = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  double battery_after = 0.0;
  double benefit = 0.0;

  bool operator==(const ScheduledTask&) const = default;
};

struct VehicleRoute {
  std::vector<ScheduledTask> tasks;

  bool operator==(const VehicleRoute&) const = default;
};

struct Solution {
  std::vector<VehicleRoute> routes;  // one per vehicle, possibly empty
  double objective = 0.0;
  SolveStatus status = SolveStatus::kInfeasibleEmpty;
  std::uint64_t explored = 0;

  // Sum over vehicles of (last event time - t0).
  double busy_time(double t0) const;
  std::size_t charge_task_count() const;
  // Per-PoI flags: a research task was performed there.
  std::vector<bool> researched(std::size_t poi_count, const ExpandedGraph& graph) const;

  bool operator==(const Solution&) const = default;
};

Solution empty_solution(const Instance& inst, SolveStatus status);

// Orders (benefit, busy time): higher benefit first, then shorter busy time.
// Returns true when a is strictly preferable to b.
inline bool better_objective(double benefit_a, double busy_a, double benefit_b,
                             double busy_b) {
  if (benefit_a > benefit_b + kBenefitEps) return true;
  if (benefit_a < benefit_b - kBenefitEps) return false;
  return busy_a < busy_b - kTimeEps;
}

}  // namespace sprrp
