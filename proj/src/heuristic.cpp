#include "sprrp/heuristic.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "sprrp/propagation.hpp"

namespace sprrp {
namespace {

std::vector<TaskType> tasks_of(VisitMode mode) {
  switch (mode) {
    case VisitMode::kResearch:
      return {TaskType::kResearch};
    case VisitMode::kChargeResearch:
      return {TaskType::kCharge, TaskType::kResearch};
    case VisitMode::kResearchCharge:
      return {TaskType::kResearch, TaskType::kCharge};
    case VisitMode::kChargeOnly:
      return {TaskType::kCharge};
  }
  return {};
}

std::vector<VisitMode> insert_modes(const Instance& inst) {
  std::vector<VisitMode> modes = {VisitMode::kResearch, VisitMode::kChargeResearch,
                                  VisitMode::kResearchCharge};
  if (inst.options.allow_charge_only_visit) modes.push_back(VisitMode::kChargeOnly);
  return modes;
}

struct Score {
  double benefit;
  double busy;
};

Score score_of(const Solution& s, const Instance& inst) {
  return {s.objective, s.busy_time(inst.t0)};
}

bool improves(const Score& a, const Score& b) {
  return better_objective(a.benefit, a.busy, b.benefit, b.busy);
}

std::vector<bool> assigned_pois(const Plan& plan, std::size_t n) {
  std::vector<bool> used(n, false);
  for (const auto& route : plan) {
    for (const auto& v : route) used[static_cast<std::size_t>(v.poi)] = true;
  }
  return used;
}

std::vector<int> seeded_order(std::size_t n, std::uint64_t seed) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

// Variants of `plan` that give one research-only visit before `limit` in
// route k a charge task.
std::vector<Plan> repairs(const Plan& plan, std::size_t k, std::size_t limit) {
  std::vector<Plan> out;
  for (std::size_t j = 0; j < limit && j < plan[k].size(); ++j) {
    if (plan[k][j].mode != VisitMode::kResearch) continue;
    for (VisitMode m : {VisitMode::kChargeResearch, VisitMode::kResearchCharge}) {
      Plan p = plan;
      p[k][j].mode = m;
      out.push_back(std::move(p));
    }
  }
  return out;
}

// Feasible insertion of `visit` at (k, pos), trying plain insertion and then
// one charge repair upstream of the insertion point (the inserted visit
// itself included).
std::optional<Solution> try_insert(const Instance& inst, const ExpandedGraph& graph,
                                   const Plan& plan, std::size_t k, std::size_t pos,
                                   PlannedVisit visit, Plan& chosen,
                                   std::uint64_t& evaluations) {
  Plan p = plan;
  p[k].insert(p[k].begin() + static_cast<std::ptrdiff_t>(pos), visit);
  ++evaluations;
  if (auto sol = realize(inst, graph, p)) {
    chosen = std::move(p);
    return sol;
  }
  for (Plan& fixed : repairs(p, k, pos)) {
    ++evaluations;
    if (auto sol = realize(inst, graph, fixed)) {
      chosen = std::move(fixed);
      return sol;
    }
  }
  return std::nullopt;
}

}  // namespace

Plan apply_move(const Plan& plan, const Move& move) {
  Plan p = plan;
  auto route = [&](int k) -> std::vector<PlannedVisit>& {
    return p.at(static_cast<std::size_t>(k));
  };
  auto check = [](const std::vector<PlannedVisit>& r, int pos, bool allow_end) {
    const int limit = static_cast<int>(r.size()) + (allow_end ? 1 : 0);
    if (pos < 0 || pos >= limit) throw std::out_of_range("move position");
  };
  switch (move.kind) {
    case MoveKind::kToggleCharge: {
      auto& r = route(move.vehicle);
      check(r, move.position, false);
      r[static_cast<std::size_t>(move.position)].mode = move.mode;
      break;
    }
    case MoveKind::kInsertPoi: {
      auto& r = route(move.vehicle);
      check(r, move.position, true);
      r.insert(r.begin() + move.position, PlannedVisit{move.poi, move.mode});
      break;
    }
    case MoveKind::kRelocate: {
      auto& from = route(move.vehicle);
      check(from, move.position, false);
      const PlannedVisit v = from[static_cast<std::size_t>(move.position)];
      from.erase(from.begin() + move.position);
      auto& to = route(move.other_vehicle);
      check(to, move.other_position, true);
      to.insert(to.begin() + move.other_position, v);
      break;
    }
    case MoveKind::kReorder2Opt: {
      auto& r = route(move.vehicle);
      check(r, move.position, false);
      check(r, move.other_position, false);
      std::reverse(r.begin() + move.position, r.begin() + move.other_position + 1);
      break;
    }
    case MoveKind::kSwapBetweenVehicles: {
      auto& a = route(move.vehicle);
      auto& b = route(move.other_vehicle);
      check(a, move.position, false);
      check(b, move.other_position, false);
      std::swap(a[static_cast<std::size_t>(move.position)],
                b[static_cast<std::size_t>(move.other_position)]);
      break;
    }
    case MoveKind::kRemovePoi: {
      auto& r = route(move.vehicle);
      check(r, move.position, false);
      r.erase(r.begin() + move.position);
      break;
    }
  }
  return p;
}

std::optional<Solution> realize(const Instance& inst, const ExpandedGraph& graph,
                                const Plan& plan) {
  const EdgeLimits limits = EdgeLimits::from(inst);
  Solution sol = empty_solution(inst, SolveStatus::kFeasible);
  if (plan.size() != sol.routes.size()) return std::nullopt;
  std::vector<bool> claimed(inst.pois.size(), false);

  for (std::size_t k = 0; k < plan.size(); ++k) {
    const double scale = inst.fleet.scale(static_cast<int>(k));
    VehicleState s = initial_state(inst);
    auto& tasks = sol.routes[k].tasks;
    auto step = [&](NodeId to, TaskType type) {
      const auto id = graph.find_edge(s.node, to, type);
      if (!id) return false;
      const TaskEdge& e = graph.edge(*id);
      auto next = apply_edge(s, e, limits, scale);
      if (!next) return false;
      tasks.push_back({e.id, e.task, e.from, e.to, s.t, next->t, next->b, e.benefit});
      s = std::move(*next);
      return true;
    };
    for (const PlannedVisit& v : plan[k]) {
      if (v.poi < 0 || static_cast<std::size_t>(v.poi) >= inst.pois.size()) {
        return std::nullopt;
      }
      if (claimed[static_cast<std::size_t>(v.poi)]) return std::nullopt;
      claimed[static_cast<std::size_t>(v.poi)] = true;
      if (!step(ExpandedGraph::in_node(v.poi), TaskType::kMove)) return std::nullopt;
      const auto types = tasks_of(v.mode);
      if (!step(ExpandedGraph::mid_node(v.poi), types[0])) return std::nullopt;
      if (types.size() == 2 && !step(ExpandedGraph::out_node(v.poi), types[1])) {
        return std::nullopt;
      }
    }
    if (!plan[k].empty() && inst.options.return_to_base &&
        !step(kBaseNode, TaskType::kMove)) {
      return std::nullopt;
    }
    if (!can_terminate(s, inst)) return std::nullopt;
  }
  for (const auto& r : sol.routes) {
    for (const auto& task : r.tasks) sol.objective += task.benefit;
  }
  return sol;
}

Plan plan_of(const Solution& sol, const ExpandedGraph& graph) {
  Plan plan(sol.routes.size());
  for (std::size_t k = 0; k < sol.routes.size(); ++k) {
    std::vector<TaskType> here;
    int poi = -1;
    auto flush = [&]() {
      if (poi < 0) return;
      VisitMode mode = VisitMode::kResearch;
      if (here.size() == 2) {
        mode = here[0] == TaskType::kCharge ? VisitMode::kChargeResearch
                                            : VisitMode::kResearchCharge;
      } else if (here.size() == 1 && here[0] == TaskType::kCharge) {
        mode = VisitMode::kChargeOnly;
      }
      plan[k].push_back({poi, mode});
      here.clear();
      poi = -1;
    };
    for (const auto& task : sol.routes[k].tasks) {
      const TaskEdge& e = graph.edge(task.edge);
      if (e.task == TaskType::kMove) {
        flush();
        poi = e.poi;
      } else {
        here.push_back(e.task);
      }
    }
    flush();
  }
  return plan;
}

Solution greedy_construct(const Instance& inst, std::uint64_t seed) {
  const ExpandedGraph graph = expand(inst);
  const std::size_t vehicles = static_cast<std::size_t>(inst.fleet.vehicle_count);
  Plan plan(vehicles);
  Solution current = *realize(inst, graph, plan);
  const std::vector<int> order = seeded_order(inst.pois.size(), seed);
  std::uint64_t evaluations = 0;

  for (;;) {
    const std::vector<bool> used = assigned_pois(plan, inst.pois.size());
    const Score base = score_of(current, inst);
    double best_ratio = -std::numeric_limits<double>::infinity();
    std::optional<Solution> best;
    Plan best_plan;
    for (int p : order) {
      if (used[static_cast<std::size_t>(p)]) continue;
      for (std::size_t k = 0; k < vehicles; ++k) {
        for (std::size_t pos = 0; pos <= plan[k].size(); ++pos) {
          for (VisitMode mode : insert_modes(inst)) {
            Plan chosen;
            auto sol = try_insert(inst, graph, plan, k, pos, {p, mode}, chosen,
                                  evaluations);
            if (!sol) continue;
            const Score s = score_of(*sol, inst);
            const double gained = s.benefit - base.benefit;
            if (gained <= kBenefitEps) continue;
            const double added = s.busy - base.busy;
            const double ratio = added > kTimeEps ? gained / added
                                                  : std::numeric_limits<double>::max();
            if (ratio > best_ratio) {
              best_ratio = ratio;
              best = std::move(sol);
              best_plan = std::move(chosen);
            }
          }
        }
      }
    }
    if (!best) break;
    plan = std::move(best_plan);
    current = std::move(*best);
  }
  current.explored = evaluations;
  return current;
}

namespace {

class Descent {
 public:
  Descent(const Instance& inst, std::uint64_t budget, std::uint64_t seed)
      : inst_(inst), graph_(expand(inst)), budget_(budget),
        order_(seeded_order(inst.pois.size(), seed)), modes_(insert_modes(inst)) {}

  const ExpandedGraph& graph() const { return graph_; }

  // Returns true if the plan was improved.
  bool sweep(Plan& plan, Solution& current) {
    for (MoveKind kind : {MoveKind::kToggleCharge, MoveKind::kInsertPoi,
                          MoveKind::kRelocate, MoveKind::kReorder2Opt,
                          MoveKind::kSwapBetweenVehicles, MoveKind::kRemovePoi}) {
      if (try_kind(kind, plan, current)) return true;
      if (exhausted()) return false;
    }
    return try_compound(plan, current);
  }

  bool exhausted() const { return evaluations_ >= budget_; }
  std::uint64_t evaluations() const { return evaluations_; }

 private:
  // Mode changes on a feasible plan while they improve it.
  void polish(Plan& plan, Solution& sol) {
    for (bool again = true; again && !exhausted();) {
      again = false;
      for (std::size_t k = 0; k < plan.size() && !again; ++k) {
        for (std::size_t i = 0; i < plan[k].size() && !again; ++i) {
          for (VisitMode m : modes_) {
            if (m == plan[k][i].mode || exhausted()) continue;
            Plan p = plan;
            p[k][i].mode = m;
            ++evaluations_;
            auto next = realize(inst_, graph_, p);
            if (next && improves(score_of(*next, inst_), score_of(sol, inst_))) {
              plan = std::move(p);
              sol = std::move(*next);
              again = true;
              break;
            }
          }
        }
      }
    }
  }

  bool adopt(Plan candidate, Solution sol, Plan& plan, Solution& current) {
    polish(candidate, sol);
    if (!improves(score_of(sol, inst_), score_of(current, inst_))) return false;
    plan = std::move(candidate);
    current = std::move(sol);
    return true;
  }

  bool consider(Plan candidate, Plan& plan, Solution& current) {
    if (exhausted()) return false;
    ++evaluations_;
    auto sol = realize(inst_, graph_, candidate);
    return sol && adopt(std::move(candidate), std::move(*sol), plan, current);
  }

  // Insertion with charge repair, then polish.
  bool consider_insert(const Plan& base, std::size_t k, std::size_t pos, PlannedVisit v,
                       Plan& plan, Solution& current) {
    Plan chosen;
    auto sol = try_insert(inst_, graph_, base, k, pos, v, chosen, evaluations_);
    return sol && adopt(std::move(chosen), std::move(*sol), plan, current);
  }

  bool try_kind(MoveKind kind, Plan& plan, Solution& current) {
    const int vehicles = static_cast<int>(plan.size());
    auto size = [&](int k) { return static_cast<int>(plan[static_cast<std::size_t>(k)].size()); };
    switch (kind) {
      case MoveKind::kToggleCharge:
        for (int k = 0; k < vehicles; ++k) {
          for (int i = 0; i < size(k); ++i) {
            const VisitMode now = plan[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)].mode;
            for (VisitMode m : modes_) {
              if (m == now) continue;
              Move mv{kind, k, i, 0, 0, -1, m};
              if (consider(apply_move(plan, mv), plan, current)) return true;
            }
          }
        }
        return false;
      case MoveKind::kInsertPoi: {
        const std::vector<bool> used = assigned_pois(plan, inst_.pois.size());
        for (int p : order_) {
          if (used[static_cast<std::size_t>(p)]) continue;
          for (int k = 0; k < vehicles; ++k) {
            for (int pos = 0; pos <= size(k); ++pos) {
              for (VisitMode m : modes_) {
                if (exhausted()) return false;
                if (consider_insert(plan, static_cast<std::size_t>(k),
                                    static_cast<std::size_t>(pos), {p, m}, plan, current)) {
                  return true;
                }
              }
            }
          }
        }
        return false;
      }
      case MoveKind::kRelocate:
        for (int k = 0; k < vehicles; ++k) {
          for (int i = 0; i < size(k); ++i) {
            for (int k2 = 0; k2 < vehicles; ++k2) {
              const int slots = size(k2) + (k2 == k ? 0 : 1);
              for (int j = 0; j < slots; ++j) {
                if (k2 == k && j == i) continue;
                Move mv{kind, k, i, k2, j};
                if (consider(apply_move(plan, mv), plan, current)) return true;
              }
            }
          }
        }
        return false;
      case MoveKind::kReorder2Opt:
        for (int k = 0; k < vehicles; ++k) {
          for (int i = 0; i < size(k); ++i) {
            for (int j = i + 1; j < size(k); ++j) {
              Move mv{kind, k, i, k, j};
              if (consider(apply_move(plan, mv), plan, current)) return true;
            }
          }
        }
        return false;
      case MoveKind::kSwapBetweenVehicles:
        for (int k = 0; k < vehicles; ++k) {
          for (int k2 = k + 1; k2 < vehicles; ++k2) {
            for (int i = 0; i < size(k); ++i) {
              for (int j = 0; j < size(k2); ++j) {
                Move mv{kind, k, i, k2, j};
                if (consider(apply_move(plan, mv), plan, current)) return true;
              }
            }
          }
        }
        return false;
      case MoveKind::kRemovePoi:
        for (int k = 0; k < vehicles; ++k) {
          for (int i = 0; i < size(k); ++i) {
            Move mv{kind, k, i};
            if (consider(apply_move(plan, mv), plan, current)) return true;
          }
        }
        return false;
    }
    return false;
  }

  // Drop at most one visit, then insert one or two unassigned PoIs. Reaches
  // replacements and pairs that are only feasible together, e.g. when the
  // second leg runs into daylight.
  bool try_compound(Plan& plan, Solution& current) {
    for (int drop_k = -1; drop_k < static_cast<int>(plan.size()); ++drop_k) {
      const int drops = drop_k < 0 ? 1 : static_cast<int>(plan[static_cast<std::size_t>(drop_k)].size());
      for (int d = 0; d < drops; ++d) {
        Plan base = plan;
        if (drop_k >= 0) {
          auto& r = base[static_cast<std::size_t>(drop_k)];
          r.erase(r.begin() + d);
        }
        const std::vector<bool> used = assigned_pois(base, inst_.pois.size());
        for (int p : order_) {
          if (used[static_cast<std::size_t>(p)]) continue;
          for (std::size_t k = 0; k < base.size(); ++k) {
            for (std::size_t pos = 0; pos <= base[k].size(); ++pos) {
              for (VisitMode m : modes_) {
                if (exhausted()) return false;
                if (drop_k >= 0 && consider_insert(base, k, pos, {p, m}, plan, current)) {
                  return true;
                }
                Plan first = base;
                first[k].insert(first[k].begin() + static_cast<std::ptrdiff_t>(pos), {p, m});
                for (int q : order_) {
                  if (q == p || used[static_cast<std::size_t>(q)]) continue;
                  for (std::size_t k2 = 0; k2 < first.size(); ++k2) {
                    for (std::size_t pos2 = 0; pos2 <= first[k2].size(); ++pos2) {
                      for (VisitMode m2 : modes_) {
                        if (exhausted()) return false;
                        if (consider_insert(first, k2, pos2, {q, m2}, plan, current)) return true;
                      }
                    }
                  }
                }
              }
            }
          }
        }
      }
    }
    return false;
  }

  const Instance& inst_;
  ExpandedGraph graph_;
  std::uint64_t budget_;
  std::vector<int> order_;
  std::vector<VisitMode> modes_;
  std::uint64_t evaluations_ = 0;
};

}  // namespace

Solution local_search(const Instance& inst, const Solution& start,
                      std::uint64_t budget, std::uint64_t seed) {
  Descent descent(inst, budget, seed);
  const auto problems = audit(start, descent.graph(), inst, 1e-9);
  if (!problems.empty()) {
    throw std::invalid_argument("local_search: infeasible start (" +
                                problems.front() + ")");
  }
  if (budget == 0) return start;

  Plan plan = plan_of(start, descent.graph());
  auto realized = realize(inst, descent.graph(), plan);
  if (!realized) throw std::invalid_argument("local_search: infeasible start");
  Solution current = std::move(*realized);
  bool improved = false;
  while (!descent.exhausted() && descent.sweep(plan, current)) improved = true;
  if (!improved) return start;
  current.explored = descent.evaluations();
  return current;
}

}  // namespace sprrp
