#include "sprrp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sprrp/graph.hpp"

// Deliberately self-contained: this file must not call into the exact
// solver's propagation (apply_edge) or the closed-form energy module.

namespace sprrp {

double quadrature_daylight(double t, double tau, double step) {
  if (tau <= 0) return 0.0;
  // A ratio within rounding noise of an integer is that integer, so that a
  // grid-aligned tau keeps panel edges on the half-sol switches.
  const double ratio = tau / step;
  const double nearest = std::round(ratio);
  const double count = std::abs(ratio - nearest) <= 1e-9 * nearest ? nearest : std::ceil(ratio);
  const auto panels = static_cast<std::uint64_t>(std::max(1.0, count));
  const double h = tau / static_cast<double>(panels);
  // sin at consecutive midpoints by rotation, re-seeded every block.
  constexpr std::uint64_t kBlock = 1024;
  const double w = 2.0 * std::numbers::pi * h;
  const double cw = std::cos(w);
  const double sw = std::sin(w);
  std::uint64_t lit = 0;
  for (std::uint64_t i0 = 0; i0 < panels; i0 += kBlock) {
    const double a = 2.0 * std::numbers::pi * (t + (static_cast<double>(i0) + 0.5) * h);
    double s = std::sin(a);
    double c = std::cos(a);
    const std::uint64_t end = std::min(panels, i0 + kBlock);
    for (std::uint64_t i = i0; i < end; ++i) {
      lit += s > 0.0;
      const double next = s * cw + c * sw;
      c = c * cw - s * sw;
      s = next;
    }
  }
  return static_cast<double>(lit) * h;
}

std::uint64_t route_set_count(std::uint64_t pois, std::uint64_t vehicles,
                              std::uint64_t modes) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (vehicles == 0) return 1;
  // sum_k C(n,k) * k! * C(k+K-1, K-1) * m^k, accumulated in long double and
  // saturated.
  long double total = 0;
  long double arrangements = 1;  // n! / (n-k)!
  long double power = 1;         // m^k
  for (std::uint64_t k = 0; k <= pois; ++k) {
    if (k > 0) {
      arrangements *= static_cast<long double>(pois - k + 1);
      power *= static_cast<long double>(modes);
    }
    long double splits = 1;  // C(k+K-1, K-1)
    for (std::uint64_t j = 1; j < vehicles; ++j) {
      splits = splits * static_cast<long double>(k + j) / static_cast<long double>(j);
    }
    total += arrangements * std::round(splits) * power;
    if (total >= static_cast<long double>(kMax)) return kMax;
  }
  return static_cast<std::uint64_t>(std::llround(total));
}

namespace {

enum class Mode : std::uint8_t { kResearch, kChargeResearch, kResearchCharge, kCharge };

struct Visit {
  int poi;
  Mode mode;
  auto operator<=>(const Visit&) const = default;
};

using RouteSet = std::vector<std::vector<Visit>>;

std::vector<TaskType> tasks_of(Mode mode) {
  switch (mode) {
    case Mode::kResearch:
      return {TaskType::kResearch};
    case Mode::kChargeResearch:
      return {TaskType::kCharge, TaskType::kResearch};
    case Mode::kResearchCharge:
      return {TaskType::kResearch, TaskType::kCharge};
    case Mode::kCharge:
      return {TaskType::kCharge};
  }
  return {};
}

struct Clock {
  double t;
  double b;
};

struct Leg {
  double duration;
  double draw;
  double gain;
};

class Enumerator {
 public:
  Enumerator(const Instance& inst, bool charging) : inst_(inst) {
    const std::size_t n = inst.pois.size();
    modes_ = {Mode::kResearch};
    if (charging) {
      modes_.insert(modes_.end(), {Mode::kChargeResearch, Mode::kResearchCharge});
      if (inst.options.allow_charge_only_visit) modes_.push_back(Mode::kCharge);
    }
    from_base_.resize(n);
    to_base_.resize(n);
    between_.assign(n, std::vector<Leg>(n));
    from_base_benefit_.assign(n, 0.0);
    to_base_benefit_.assign(n, 0.0);
    between_benefit_.assign(n, std::vector<double>(n, 0.0));
    const double gm = inst.energy.gain_amplitude[0];
    for (const MovementSpec& m : inst.movements) {
      const Leg leg{m.duration, m.draw, gm};
      const auto from = inst.poi_index(m.from);
      const auto to = inst.poi_index(m.to);
      if (!from && to) {
        from_base_[*to] = leg;
        from_base_benefit_[*to] = m.benefit;
      } else if (from && !to) {
        to_base_[*from] = leg;
        to_base_benefit_[*from] = m.benefit;
      } else if (from && to) {
        between_[*from][*to] = leg;
        between_benefit_[*from][*to] = m.benefit;
      }
    }
    used_.assign(n, false);
    current_.resize(static_cast<std::size_t>(inst.fleet.vehicle_count));
  }

  void run() { start_vehicle(0, 0.0, 0.0); }

  bool found() const { return found_; }
  const RouteSet& best() const { return best_; }
  std::uint64_t explored() const { return explored_; }

 private:
  // Memo shared by all enumerations; keys are (phase, tau) at 1e-12.
  static double daylight(double t, double tau) {
    struct PairHash {
      std::size_t operator()(const std::pair<long long, long long>& k) const {
        return std::hash<long long>{}(k.first) * 1000003u ^ std::hash<long long>{}(k.second);
      }
    };
    static std::mutex mutex;
    static std::unordered_map<std::pair<long long, long long>, double, PairHash> cache;
    const double phase = t - std::floor(t);
    const auto key = std::pair{std::llround(phase * 1e12), std::llround(tau * 1e12)};
    {
      std::lock_guard lock(mutex);
      if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    const double value = quadrature_daylight(phase, tau);
    std::lock_guard lock(mutex);
    cache.emplace(key, value);
    return value;
  }

  std::optional<Clock> advance(Clock c, const Leg& leg, int vehicle) {
    const double tau = leg.duration * inst_.fleet.scale(vehicle);
    const double t = c.t + tau;
    if (t > inst_.t_max + kTimeEps) return std::nullopt;
    const double raw = c.b + (leg.gain * daylight(c.t, tau) - leg.draw * tau);
    if (raw < -kEnergyEps) return std::nullopt;
    return Clock{t, std::min(std::max(raw, 0.0), inst_.fleet.battery_capacity)};
  }

  Leg task_leg(int poi, TaskType task) const {
    const PoiSpec& p = inst_.pois[static_cast<std::size_t>(poi)];
    if (task == TaskType::kResearch) {
      return {p.research_duration, p.research_draw, inst_.energy.gain_amplitude[1]};
    }
    return {p.charge_duration, p.charge_draw, inst_.energy.gain_amplitude[2]};
  }

  double task_benefit(int poi, TaskType task) const {
    const PoiSpec& p = inst_.pois[static_cast<std::size_t>(poi)];
    return task == TaskType::kResearch ? p.research_benefit : p.charge_benefit;
  }

  void start_vehicle(int k, double benefit, double busy) {
    if (k == inst_.fleet.vehicle_count) {
      finish(benefit, busy);
      return;
    }
    extend(k, Clock{inst_.t0, inst_.fleet.b0()}, -1, benefit, busy);
  }

  void extend(int k, Clock c, int last, double benefit, double busy) {
    auto& route = current_[static_cast<std::size_t>(k)];
    // Close the route here.
    if (last < 0) {
      start_vehicle(k + 1, benefit, busy);
    } else if (inst_.options.return_to_base) {
      if (auto back = advance(c, to_base_[static_cast<std::size_t>(last)], k)) {
        start_vehicle(k + 1, benefit + to_base_benefit_[static_cast<std::size_t>(last)],
                      busy + (back->t - inst_.t0));
      }
    } else {
      start_vehicle(k + 1, benefit, busy + (c.t - inst_.t0));
    }

    for (std::size_t p = 0; p < used_.size(); ++p) {
      if (used_[p]) continue;
      const Leg& move = last < 0 ? from_base_[p]
                                 : between_[static_cast<std::size_t>(last)][p];
      auto arrived = advance(c, move, k);
      if (!arrived) continue;
      const double move_benefit =
          last < 0 ? from_base_benefit_[p]
                   : between_benefit_[static_cast<std::size_t>(last)][p];
      for (Mode mode : modes_) {
        std::optional<Clock> at = arrived;
        double gained = move_benefit;
        for (TaskType task : tasks_of(mode)) {
          at = advance(*at, task_leg(static_cast<int>(p), task), k);
          if (!at) break;
          gained += task_benefit(static_cast<int>(p), task);
        }
        if (!at) continue;
        used_[p] = true;
        route.push_back({static_cast<int>(p), mode});
        extend(k, *at, static_cast<int>(p), benefit + gained, busy);
        route.pop_back();
        used_[p] = false;
      }
    }
  }

  void finish(double benefit, double busy) {
    ++explored_;
    bool take = false;
    if (!found_ || benefit > best_benefit_ + kBenefitEps) {
      take = true;
    } else if (benefit >= best_benefit_ - kBenefitEps) {
      if (busy < best_busy_ - kTimeEps) {
        take = true;
      } else if (busy <= best_busy_ + kTimeEps) {
        take = current_ < best_;
      }
    }
    if (!take) return;
    found_ = true;
    best_benefit_ = benefit;
    best_busy_ = busy;
    best_ = current_;
  }

  const Instance& inst_;
  std::vector<Mode> modes_;
  std::vector<Leg> from_base_;
  std::vector<Leg> to_base_;
  std::vector<std::vector<Leg>> between_;
  std::vector<double> from_base_benefit_;
  std::vector<double> to_base_benefit_;
  std::vector<std::vector<double>> between_benefit_;

  std::vector<bool> used_;
  RouteSet current_;
  RouteSet best_;
  bool found_ = false;
  double best_benefit_ = 0.0;
  double best_busy_ = 0.0;
  std::uint64_t explored_ = 0;
};

}  // namespace

OracleResult enumerate_all(const Instance& inst, std::uint64_t hard_limit, bool charging) {
  const std::uint64_t modes = !charging ? 1 : inst.options.allow_charge_only_visit ? 4 : 3;
  const std::uint64_t count = route_set_count(
      inst.pois.size(), static_cast<std::uint64_t>(inst.fleet.vehicle_count), modes);
  if (count > hard_limit) {
    throw OracleLimitExceeded("oracle: " + std::to_string(count) +
                              " route sets exceed the limit of " +
                              std::to_string(hard_limit));
  }

  Enumerator en(inst, charging);
  en.run();

  OracleResult result;
  result.explored = en.explored();
  result.best = empty_solution(inst, SolveStatus::kOptimal);
  result.best.explored = en.explored();
  if (!en.found()) {
    result.best.status = SolveStatus::kInfeasibleEmpty;
    return result;
  }

  // Rebuild the schedule on the event graph so that callers can audit it.
  const ExpandedGraph graph = expand(inst);
  const EnergyParams& energy = inst.energy;
  for (std::size_t k = 0; k < en.best().size(); ++k) {
    auto& tasks = result.best.routes[k].tasks;
    double t = inst.t0;
    double b = inst.fleet.b0();
    const double scale = inst.fleet.scale(static_cast<int>(k));
    auto push = [&](NodeId from, NodeId to, TaskType type) {
      const EdgeId id = graph.find_edge(from, to, type).value();
      const TaskEdge& e = graph.edge(id);
      const double tau = e.duration * scale;
      const double raw =
          b + (energy.gain(type) * quadrature_daylight(t - std::floor(t), tau) -
               e.draw * tau);
      const double next_t = t + tau;
      const double next_b = std::min(std::max(raw, 0.0), inst.fleet.battery_capacity);
      tasks.push_back({id, type, from, to, t, next_t, next_b, e.benefit});
      result.best.objective += e.benefit;
      t = next_t;
      b = next_b;
    };
    NodeId at = kBaseNode;
    for (const Visit& v : en.best()[k]) {
      push(at, ExpandedGraph::in_node(v.poi), TaskType::kMove);
      const auto tasks_here = tasks_of(v.mode);
      push(ExpandedGraph::in_node(v.poi), ExpandedGraph::mid_node(v.poi), tasks_here[0]);
      at = ExpandedGraph::mid_node(v.poi);
      if (tasks_here.size() == 2) {
        push(at, ExpandedGraph::out_node(v.poi), tasks_here[1]);
        at = ExpandedGraph::out_node(v.poi);
      }
    }
    if (at != kBaseNode && inst.options.return_to_base) {
      push(at, kBaseNode, TaskType::kMove);
    }
  }
  return result;
}

}  // namespace sprrp
