#include "sprrp/solution.hpp"

namespace sprrp {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kFeasible:
      return "feasible";
    case SolveStatus::kInfeasibleEmpty:
      return "infeasible-empty";
  }
  return "?";
}

double Solution::busy_time(double t0) const {
  double total = 0.0;
  for (const auto& r : routes) {
    if (!r.tasks.empty()) total += r.tasks.back().t_end - t0;
  }
  return total;
}

std::size_t Solution::charge_task_count() const {
  std::size_t count = 0;
  for (const auto& r : routes) {
    for (const auto& task : r.tasks) count += task.task == TaskType::kCharge;
  }
  return count;
}

std::vector<bool> Solution::researched(std::size_t poi_count,
                                       const ExpandedGraph& graph) const {
  std::vector<bool> flags(poi_count, false);
  for (const auto& r : routes) {
    for (const auto& task : r.tasks) {
      if (task.task == TaskType::kResearch) {
        flags.at(static_cast<std::size_t>(graph.edge(task.edge).poi)) = true;
      }
    }
  }
  return flags;
}

Solution empty_solution(const Instance& inst, SolveStatus status) {
  Solution s;
  s.routes.resize(static_cast<std::size_t>(std::max(0, inst.fleet.vehicle_count)));
  s.status = status;
  return s;
}

}  // namespace sprrp
