#pragma once

#include <string>
#include <vector>

#include "sprrp/graph.hpp"
#include "sprrp/instance.hpp"
#include "sprrp/solution.hpp"

namespace sprrp {

// "base", or "<poi id>.in" / ".mid" / ".out".
std::string node_label(const ExpandedGraph& graph, const Instance& inst, NodeId node);

std::string solution_json(const Solution& sol, const Instance& inst,
                          const ExpandedGraph& graph);

// vehicle,task_type,from_node,to_node,t_start,t_end,battery_after,benefit
std::string timeline_csv(const Solution& sol, const Instance& inst,
                         const ExpandedGraph& graph);

std::string text_report(const Solution& sol, const Instance& inst,
                        const ExpandedGraph& graph);

struct SweepRow {
  double value = 0.0;
  double objective = 0.0;
  std::vector<bool> visited;  // per PoI, research performed
  std::size_t charge_tasks = 0;
  SolveStatus status = SolveStatus::kOptimal;
  double wall_time = 0.0;  // seconds
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepRow> rows;
};

// value,objective,visited_<id>...,charge_tasks,status and, with
// `with_timing`, a trailing wall_time column.
std::string sweep_csv(const SweepResult& sweep, const Instance& inst,
                      bool with_timing);

}  // namespace sprrp
