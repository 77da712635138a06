#include "sprrp/report.hpp"

#include <sstream>

#include "json_util.hpp"
#include "sprrp/format.hpp"

namespace sprrp {

std::string node_label(const ExpandedGraph& graph, const Instance& inst, NodeId node) {
  const EventNode& v = graph.nodes().at(static_cast<std::size_t>(node));
  if (v.kind == NodeKind::kBase) return std::string(kBaseId);
  return inst.pois[static_cast<std::size_t>(v.poi)].id + "." +
         std::string(to_string(v.kind).substr(4));
}

std::string solution_json(const Solution& sol, const Instance& inst,
                          const ExpandedGraph& graph) {
  nlohmann::json root;
  root["objective"] = sol.objective;
  root["status"] = std::string(to_string(sol.status));
  root["explored"] = sol.explored;
  root["busy_time"] = sol.busy_time(inst.t0);
  root["charge_tasks"] = sol.charge_task_count();
  const auto visited = sol.researched(inst.pois.size(), graph);
  nlohmann::json flags = nlohmann::json::object();
  for (std::size_t p = 0; p < inst.pois.size(); ++p) flags[inst.pois[p].id] = bool(visited[p]);
  root["visited"] = flags;
  nlohmann::json routes = nlohmann::json::array();
  for (std::size_t k = 0; k < sol.routes.size(); ++k) {
    nlohmann::json tasks = nlohmann::json::array();
    for (const ScheduledTask& t : sol.routes[k].tasks) {
      tasks.push_back({{"edge", t.edge},
                       {"task_type", std::string(to_string(t.task))},
                       {"from_node", node_label(graph, inst, t.from)},
                       {"to_node", node_label(graph, inst, t.to)},
                       {"t_start", t.t_start},
                       {"t_end", t.t_end},
                       {"battery_after", t.battery_after},
                       {"benefit", t.benefit}});
    }
    routes.push_back({{"vehicle", k}, {"tasks", tasks}});
  }
  root["routes"] = routes;
  return detail::dump_json(root);
}

std::string timeline_csv(const Solution& sol, const Instance& inst,
                         const ExpandedGraph& graph) {
  std::ostringstream os;
  os << "vehicle,task_type,from_node,to_node,t_start,t_end,battery_after,benefit\n";
  for (std::size_t k = 0; k < sol.routes.size(); ++k) {
    for (const ScheduledTask& t : sol.routes[k].tasks) {
      os << k << ',' << to_string(t.task) << ',' << node_label(graph, inst, t.from) << ','
         << node_label(graph, inst, t.to) << ',' << format_number(t.t_start) << ','
         << format_number(t.t_end) << ',' << format_number(t.battery_after) << ','
         << format_number(t.benefit) << '\n';
    }
  }
  return os.str();
}

std::string text_report(const Solution& sol, const Instance& inst,
                        const ExpandedGraph& graph) {
  std::ostringstream os;
  os << "status: " << to_string(sol.status) << '\n'
     << "objective: " << format_number(sol.objective) << '\n'
     << "busy time: " << format_number(sol.busy_time(inst.t0)) << '\n'
     << "charge tasks: " << sol.charge_task_count() << '\n';
  for (std::size_t k = 0; k < sol.routes.size(); ++k) {
    os << "vehicle " << k;
    if (sol.routes[k].tasks.empty()) {
      os << ": idle\n";
      continue;
    }
    os << ":\n";
    for (const ScheduledTask& t : sol.routes[k].tasks) {
      os << "  [" << format_number(t.t_start) << ", " << format_number(t.t_end) << "] "
         << to_string(t.task) << ' ' << node_label(graph, inst, t.from) << " -> "
         << node_label(graph, inst, t.to) << "  battery " << format_number(t.battery_after);
      if (t.benefit != 0) os << "  +" << format_number(t.benefit);
      os << '\n';
    }
  }
  return os.str();
}

std::string sweep_csv(const SweepResult& sweep, const Instance& inst, bool with_timing) {
  std::ostringstream os;
  os << "value,objective";
  for (const PoiSpec& p : inst.pois) os << ",visited_" << p.id;
  os << ",charge_tasks,status";
  if (with_timing) os << ",wall_time";
  os << '\n';
  for (const SweepRow& row : sweep.rows) {
    os << format_number(row.value) << ',' << format_number(row.objective);
    for (bool v : row.visited) os << ',' << (v ? 1 : 0);
    os << ',' << row.charge_tasks << ',' << to_string(row.status);
    if (with_timing) os << ',' << format_number(row.wall_time);
    os << '\n';
  }
  return os.str();
}

}  // namespace sprrp
