#include "sprrp/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sprrp/energy.hpp"

namespace sprrp {
namespace {

int poi_of(NodeId node) { return node == kBaseNode ? -1 : (node - 1) / 3; }
bool is_in_node(NodeId node) { return node != kBaseNode && (node - 1) % 3 == 0; }

bool charge_only_pending(const VehicleState& s) {
  const int p = poi_of(s.node);
  return p >= 0 && s.done_charge.contains(p) && !s.done_research.contains(p);
}

}  // namespace

bool PoiSet::empty() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

std::size_t PoiSet::hash() const {
  std::size_t h = words_.size();
  for (std::uint64_t w : words_) {
    h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

VehicleState initial_state(const Instance& inst) {
  VehicleState s;
  s.node = kBaseNode;
  s.t = inst.t0;
  s.b = inst.fleet.b0();
  s.visited = PoiSet(inst.pois.size());
  s.done_research = PoiSet(inst.pois.size());
  s.done_charge = PoiSet(inst.pois.size());
  return s;
}

std::optional<VehicleState> apply_edge(const VehicleState& s, const TaskEdge& e,
                                       const EdgeLimits& limits,
                                       double duration_scale) {
  if (e.from != s.node) {
    throw std::invalid_argument("apply_edge: edge " + std::to_string(e.id) +
                                " does not start at node " +
                                std::to_string(s.node));
  }
  VehicleState next = s;
  switch (e.task) {
    case TaskType::kMove:
      if (s.node == kBaseNode && !s.visited.empty()) return std::nullopt;
      if (!limits.allow_charge_only_visit && charge_only_pending(s)) {
        return std::nullopt;
      }
      if (e.poi >= 0) {
        if (s.visited.contains(e.poi)) return std::nullopt;
        next.visited.insert(e.poi);
      }
      break;
    case TaskType::kResearch:
      if (s.done_research.contains(e.poi)) return std::nullopt;
      next.done_research.insert(e.poi);
      break;
    case TaskType::kCharge:
      if (s.done_charge.contains(e.poi)) return std::nullopt;
      next.done_charge.insert(e.poi);
      break;
  }

  const double tau = e.duration * duration_scale;
  next.t = s.t + tau;
  if (next.t > limits.t_max + kTimeEps) return std::nullopt;
  const double raw = s.b + delta_e(s.t, tau, e.draw, e.gain_amp).net;
  if (raw < -kEnergyEps) return std::nullopt;
  next.b = std::clamp(raw, 0.0, limits.capacity);
  next.node = e.to;
  return next;
}

bool can_terminate(const VehicleState& s, const Instance& inst) {
  if (inst.options.return_to_base) return s.node == kBaseNode;
  if (is_in_node(s.node)) return false;
  return inst.options.allow_charge_only_visit || !charge_only_pending(s);
}

std::vector<std::string> audit(const Solution& sol, const ExpandedGraph& graph,
                               const Instance& inst, double tolerance) {
  std::vector<std::string> problems;
  auto differs = [&](double a, double b) {
    return tolerance > 0 ? std::abs(a - b) > tolerance : a != b;
  };
  if (sol.routes.size() != static_cast<std::size_t>(inst.fleet.vehicle_count)) {
    problems.push_back("route count differs from fleet size");
    return problems;
  }
  const EdgeLimits limits = EdgeLimits::from(inst);
  PoiSet claimed(inst.pois.size());
  double objective = 0.0;
  for (std::size_t k = 0; k < sol.routes.size(); ++k) {
    const std::string who = "vehicle " + std::to_string(k);
    VehicleState s = initial_state(inst);
    for (std::size_t i = 0; i < sol.routes[k].tasks.size(); ++i) {
      const ScheduledTask& task = sol.routes[k].tasks[i];
      const std::string at = who + " task " + std::to_string(i);
      if (task.edge < 0 || static_cast<std::size_t>(task.edge) >= graph.edges().size()) {
        problems.push_back(at + ": unknown edge");
        return problems;
      }
      const TaskEdge& e = graph.edge(task.edge);
      if (e.from != s.node) {
        problems.push_back(at + ": does not continue from node " +
                           std::to_string(s.node));
        return problems;
      }
      if (e.task == TaskType::kMove && e.poi >= 0) {
        if (claimed.contains(e.poi)) {
          problems.push_back(at + ": PoI already visited by another vehicle");
        }
        claimed.insert(e.poi);
      }
      if (differs(task.t_start, s.t)) problems.push_back(at + ": start time mismatch");
      auto next = apply_edge(s, e, limits, inst.fleet.scale(static_cast<int>(k)));
      if (!next) {
        problems.push_back(at + ": infeasible");
        return problems;
      }
      if (task.from != e.from || task.to != e.to || task.task != e.task) {
        problems.push_back(at + ": edge fields mismatch");
      }
      if (differs(task.t_end, next->t)) problems.push_back(at + ": end time mismatch");
      if (differs(task.battery_after, next->b)) {
        problems.push_back(at + ": battery mismatch");
      }
      if (task.benefit != e.benefit) problems.push_back(at + ": benefit mismatch");
      objective += e.benefit;
      s = *next;
    }
    if (!sol.routes[k].tasks.empty() && !can_terminate(s, inst)) {
      problems.push_back(who + ": route may not end at node " + std::to_string(s.node));
    }
  }
  if (differs(objective, sol.objective)) problems.push_back("objective mismatch");
  return problems;
}

}  // namespace sprrp
