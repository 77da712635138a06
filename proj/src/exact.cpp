#include "sprrp/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>

namespace sprrp {
namespace {

struct BoundTable {
  std::vector<double> unvisited_value;  // per PoI
  std::vector<double> research;
  std::vector<double> charge;
  double best_return = 0.0;
};

BoundTable make_bound_table(const Instance& inst, const ExpandedGraph& graph) {
  BoundTable t;
  const std::size_t n = inst.pois.size();
  std::vector<double> best_entry(n, 0.0);
  for (const TaskEdge& e : graph.edges()) {
    if (e.task != TaskType::kMove) continue;
    if (e.poi >= 0) {
      auto& slot = best_entry[static_cast<std::size_t>(e.poi)];
      slot = std::max(slot, e.benefit);
    } else {
      t.best_return = std::max(t.best_return, e.benefit);
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    t.research.push_back(inst.pois[p].research_benefit);
    t.charge.push_back(inst.pois[p].charge_benefit);
    t.unvisited_value.push_back(t.research[p] + t.charge[p] + best_entry[p]);
  }
  return t;
}

double bound_with(const SearchState& st, const Instance& inst,
                  const BoundTable& table) {
  double ub = st.benefit;
  for (std::size_t p = 0; p < inst.pois.size(); ++p) {
    if (!st.visited.contains(static_cast<int>(p))) ub += table.unvisited_value[p];
  }
  const int vehicles = static_cast<int>(st.vehicles.size());
  if (st.active >= vehicles) return ub;
  const VehicleState& v = st.vehicles[static_cast<std::size_t>(st.active)];
  if (v.node != kBaseNode) {
    const int p = (v.node - 1) / 3;
    if (!v.done_research.contains(p)) ub += table.research[static_cast<std::size_t>(p)];
    if (!v.done_charge.contains(p)) ub += table.charge[static_cast<std::size_t>(p)];
  }
  if (inst.options.return_to_base && table.best_return > 0) {
    const bool active_returned = v.node == kBaseNode && !v.visited.empty();
    const int open = vehicles - st.active - (active_returned ? 1 : 0);
    ub += open * table.best_return;
  }
  return ub;
}

bool whole_sols_apart(double t1, double t2) {
  const double d = t2 - t1;
  return std::abs(d - std::round(d)) <= 1e-12;
}

bool time_energy_dominates(double t1, double b1, double t2, double b2,
                           bool phase_invariant) {
  if (!(t1 <= t2 && b1 >= b2)) return false;
  return phase_invariant || whole_sols_apart(t1, t2);
}

struct Label {
  double t;
  double b;
  double benefit;
  double busy;
};

struct LabelKey {
  int active;
  NodeId node;
  int first_target;
  int symmetry_floor;
  std::uint8_t done_here;  // bit 0 research, bit 1 charge at the current PoI
  PoiSet visited;

  bool operator==(const LabelKey&) const = default;
};

struct LabelKeyHash {
  std::size_t operator()(const LabelKey& k) const {
    std::size_t h = k.visited.hash();
    for (int v : {k.active, k.node, k.first_target, k.symmetry_floor,
                  static_cast<int>(k.done_here)}) {
      h ^= std::hash<int>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

constexpr std::size_t kMaxLabels = 4'000'000;
constexpr int kNoDeparture = -2;

class ExactSearch {
 public:
  ExactSearch(const Instance& inst, const SolverConfig& cfg)
      : inst_(inst),
        graph_(expand(inst)),
        cfg_(cfg),
        table_(make_bound_table(inst, graph_)),
        limits_(EdgeLimits::from(inst)),
        phase_invariant_(phase_invariant(inst, graph_)),
        vehicle_count_(inst.fleet.vehicle_count) {
    state_ = root_state(inst);
    first_target_.assign(static_cast<std::size_t>(vehicle_count_), -1);
    trail_.resize(static_cast<std::size_t>(vehicle_count_));
    order_edges();
  }

  Solution run() {
    start_ = std::chrono::steady_clock::now();
    search();
    Solution sol = empty_solution(inst_, SolveStatus::kInfeasibleEmpty);
    sol.explored = nodes_;
    if (!have_incumbent_) return sol;
    sol.status = aborted_ ? SolveStatus::kFeasible : SolveStatus::kOptimal;
    for (std::size_t k = 0; k < incumbent_.size(); ++k) {
      sol.routes[k].tasks = incumbent_[k];
      for (const auto& task : incumbent_[k]) sol.objective += task.benefit;
    }
    return sol;
  }

 private:
  VehicleState& active_vehicle() {
    return state_.vehicles[static_cast<std::size_t>(state_.active)];
  }

  double scale() const { return inst_.fleet.scale(state_.active); }

  // Smallest PoI index the active vehicle's first movement may target, or
  // kNoDeparture when it must stay at the base.
  int symmetry_floor() const {
    const int k = state_.active;
    if (k == 0 || inst_.fleet.scale(k) != inst_.fleet.scale(k - 1)) return -1;
    const int prev = first_target_[static_cast<std::size_t>(k - 1)];
    return prev < 0 ? kNoDeparture : prev + 1;
  }

  void order_edges() {
    for (std::size_t node = 0; node < graph_.nodes().size(); ++node) {
      auto ids = graph_.outgoing_ids(static_cast<NodeId>(node));
      std::vector<EdgeId> sorted(ids.begin(), ids.end());
      auto density = [&](EdgeId id) {
        const TaskEdge& e = graph_.edge(id);
        double value = e.benefit;
        if (e.task == TaskType::kMove && e.poi >= 0) {
          value += table_.research[static_cast<std::size_t>(e.poi)];
        }
        return value / e.duration;
      };
      switch (cfg_.branching) {
        case BranchOrder::kBenefitDensity:
          std::stable_sort(sorted.begin(), sorted.end(), [&](EdgeId a, EdgeId b) {
            return density(a) > density(b);
          });
          break;
        case BranchOrder::kNearest:
          std::stable_sort(sorted.begin(), sorted.end(), [&](EdgeId a, EdgeId b) {
            return graph_.edge(a).duration < graph_.edge(b).duration;
          });
          break;
        case BranchOrder::kInputOrder:
          break;
      }
      ordered_.push_back(std::move(sorted));
    }
  }

  bool out_of_budget() {
    if (aborted_) return true;
    if (++nodes_ > cfg_.node_budget) {
      aborted_ = true;
    } else if ((nodes_ & 1023u) == 0) {
      const std::chrono::duration<double> elapsed =
          std::chrono::steady_clock::now() - start_;
      if (elapsed.count() > cfg_.time_budget_seconds) aborted_ = true;
    }
    return aborted_;
  }

  bool dominated_or_record(double busy) {
    const VehicleState& v = active_vehicle();
    std::uint8_t done_here = 0;
    if (v.node != kBaseNode) {
      const int p = (v.node - 1) / 3;
      done_here = static_cast<std::uint8_t>((v.done_research.contains(p) ? 1 : 0) |
                                            (v.done_charge.contains(p) ? 2 : 0));
    }
    LabelKey key{state_.active,
                 v.node,
                 first_target_[static_cast<std::size_t>(state_.active)],
                 symmetry_floor(),
                 done_here,
                 state_.visited};
    const Label label{v.t, v.b, state_.benefit, busy};
    auto& bucket = labels_[key];
    for (const Label& other : bucket) {
      if (other.benefit >= label.benefit && other.busy <= label.busy &&
          time_energy_dominates(other.t, other.b, label.t, label.b,
                                phase_invariant_)) {
        return true;
      }
    }
    if (label_count_ >= kMaxLabels) return false;
    const std::size_t before = bucket.size();
    std::erase_if(bucket, [&](const Label& other) {
      return label.benefit >= other.benefit && label.busy <= other.busy &&
             time_energy_dominates(label.t, label.b, other.t, other.b,
                                   phase_invariant_);
    });
    label_count_ -= before - bucket.size();
    bucket.push_back(label);
    ++label_count_;
    return false;
  }

  void search() {
    if (out_of_budget()) return;
    VehicleState& v = active_vehicle();
    const double busy = closed_busy_ + (v.t - inst_.t0);

    if (have_incumbent_) {
      const double ub = bound_with(state_, inst_, table_);
      if (ub < incumbent_benefit_ - kBenefitEps) return;
      if (ub <= incumbent_benefit_ + kBenefitEps && busy >= incumbent_busy_ - kTimeEps) {
        return;
      }
    }
    if (cfg_.enable_dominance && dominated_or_record(busy)) return;

    const bool at_start = v.node == kBaseNode && v.visited.empty();
    const int floor = at_start ? symmetry_floor() : -1;
    const std::size_t k = static_cast<std::size_t>(state_.active);

    if (floor != kNoDeparture) {
      for (EdgeId id : ordered_[static_cast<std::size_t>(v.node)]) {
        const TaskEdge& e = graph_.edge(id);
        const bool enters_poi = e.task == TaskType::kMove && e.poi >= 0;
        if (enters_poi && state_.visited.contains(e.poi)) continue;
        if (at_start && e.poi < floor) continue;
        auto next = apply_edge(v, e, limits_, scale());
        if (!next) continue;

        const VehicleState saved = v;
        const double saved_benefit = state_.benefit;
        const PoiSet saved_visited = state_.visited;
        if (enters_poi) state_.visited.insert(e.poi);
        if (at_start) first_target_[k] = e.poi;
        state_.benefit += e.benefit;
        trail_[k].push_back({e.id, e.task, e.from, e.to, saved.t, next->t, next->b,
                             e.benefit});
        active_vehicle() = std::move(*next);

        search();

        trail_[k].pop_back();
        active_vehicle() = saved;
        state_.benefit = saved_benefit;
        state_.visited = saved_visited;
        if (at_start) first_target_[k] = -1;
        if (aborted_) return;
      }
    }

    if (can_terminate(active_vehicle(), inst_)) close_vehicle(busy);
  }

  void close_vehicle(double busy) {
    if (state_.active + 1 == vehicle_count_) {
      if (!have_incumbent_ ||
          better_objective(state_.benefit, busy, incumbent_benefit_, incumbent_busy_)) {
        have_incumbent_ = true;
        incumbent_benefit_ = state_.benefit;
        incumbent_busy_ = busy;
        incumbent_ = trail_;
      }
      return;
    }
    const double saved_closed = closed_busy_;
    closed_busy_ = busy;
    ++state_.active;
    search();
    active_vehicle() = initial_state(inst_);
    --state_.active;
    closed_busy_ = saved_closed;
  }

  const Instance& inst_;
  ExpandedGraph graph_;
  SolverConfig cfg_;
  BoundTable table_;
  EdgeLimits limits_;
  bool phase_invariant_;
  int vehicle_count_;
  std::vector<std::vector<EdgeId>> ordered_;

  SearchState state_;
  double closed_busy_ = 0.0;
  std::vector<int> first_target_;
  std::vector<std::vector<ScheduledTask>> trail_;

  bool have_incumbent_ = false;
  double incumbent_benefit_ = 0.0;
  double incumbent_busy_ = 0.0;
  std::vector<std::vector<ScheduledTask>> incumbent_;

  std::unordered_map<LabelKey, std::vector<Label>, LabelKeyHash> labels_;
  std::size_t label_count_ = 0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

SearchState root_state(const Instance& inst) {
  SearchState st;
  st.vehicles.assign(static_cast<std::size_t>(std::max(0, inst.fleet.vehicle_count)),
                     initial_state(inst));
  st.visited = PoiSet(inst.pois.size());
  return st;
}

double upper_bound(const SearchState& st, const Instance& inst) {
  const ExpandedGraph graph = expand(inst);
  return bound_with(st, inst, make_bound_table(inst, graph));
}

bool dominates(const VehicleState& s1, const VehicleState& s2,
               bool phase_invariant) {
  if (s1.node != s2.node || !(s1.visited == s2.visited) ||
      !(s1.done_research == s2.done_research) ||
      !(s1.done_charge == s2.done_charge)) {
    return false;
  }
  return time_energy_dominates(s1.t, s1.b, s2.t, s2.b, phase_invariant);
}

bool phase_invariant(const Instance& inst, const ExpandedGraph& graph) {
  const bool any_gain =
      std::any_of(inst.energy.gain_amplitude.begin(), inst.energy.gain_amplitude.end(),
                  [](double a) { return a > 0; });
  if (!any_gain) return true;
  for (int k = 0; k < inst.fleet.vehicle_count; ++k) {
    for (const TaskEdge& e : graph.edges()) {
      if (e.gain_amp == 0) continue;
      const double tau = e.duration * inst.fleet.scale(k);
      if (std::abs(tau - std::round(tau)) > 1e-12) return false;
    }
  }
  return true;
}

Solution solve_exact(const Instance& inst, const SolverConfig& cfg) {
  return ExactSearch(inst, cfg).run();
}

}  // namespace sprrp
