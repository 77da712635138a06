#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "sprrp/instance.hpp"

namespace sprrp::testing {

// Small random instances on a coarse grid: durations are multiples of 0.05,
// draws and gains multiples of 0.5, benefits integers. Task boundaries then
// fall on quadrature panel edges and objectives compare exactly.
struct RandomInstanceOptions {
  int max_pois = 3;
  int max_vehicles = 2;
};

class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed, RandomInstanceOptions options = {})
      : rng_(seed), options_(options) {}

  Instance next() {
    Instance inst;
    const int n = pick(1, options_.max_pois);
    inst.fleet.vehicle_count = pick(1, options_.max_vehicles);
    for (int p = 0; p < n; ++p) {
      PoiSpec poi;
      poi.id = "P" + std::to_string(p + 1);
      poi.research_duration = 0.05 * pick(2, 16);
      poi.research_draw = 0.5 * pick(1, 8);
      poi.charge_duration = 0.05 * pick(2, 16);
      poi.charge_draw = 0.5 * pick(0, 2);
      poi.research_benefit = pick(1, 5);
      poi.charge_benefit = pick(0, 9) == 0 ? 1 : 0;
      poi.move_benefit = pick(0, 4) == 0 ? 1 : 0;
      inst.pois.push_back(poi);
    }
    auto add_move = [&](const std::string& from, const std::string& to, double benefit) {
      inst.movements.push_back(
          {from, to, 0.05 * pick(2, 24), 0.5 * pick(1, 8), benefit});
    };
    for (const PoiSpec& to : inst.pois) add_move(std::string(kBaseId), to.id, to.move_benefit);
    for (const PoiSpec& from : inst.pois) {
      add_move(from.id, std::string(kBaseId), 0);
      for (const PoiSpec& to : inst.pois) {
        if (from.id != to.id) add_move(from.id, to.id, to.move_benefit);
      }
    }
    inst.energy.gain_amplitude = {0.5 * pick(0, 8), 0.5 * pick(0, 8), 0.5 * pick(0, 16)};
    inst.fleet.battery_capacity = 0.5 * pick(2, 24);
    if (pick(0, 3) == 0) inst.fleet.initial_energy = 0.5 * pick(0, static_cast<int>(2 * inst.fleet.battery_capacity));
    if (inst.fleet.vehicle_count == 2 && pick(0, 3) == 0) inst.fleet.duration_scale = {1.0, 1.5};
    const int t0_choice = pick(0, 3);
    inst.t0 = t0_choice == 0 ? 0.25 : t0_choice == 1 ? 1.5 : 0.0;
    inst.t_max = inst.t0 + 0.25 * pick(2, 16);
    inst.options.return_to_base = pick(0, 1) == 1;
    inst.options.allow_charge_only_visit = pick(0, 1) == 1;
    return inst;
  }

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
  RandomInstanceOptions options_;
};

}  // namespace sprrp::testing
