#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sprrp/instance.hpp"
#include "sprrp/report.hpp"
#include "sprrp/solution.hpp"

namespace sprrp {

enum class SolverKind : std::uint8_t { kExact, kGreedy, kOracle };

struct RunSettings {
  SolverKind solver = SolverKind::kExact;
  std::uint64_t seed = 0;
  std::uint64_t node_budget = 200'000'000;
  double time_budget_seconds = 600.0;
  // Neighbours evaluated by local search after greedy construction.
  std::uint64_t search_budget = 1'000'000;
};

Solution solve_with(const Instance& inst, const RunSettings& settings);

// Parameters: battery, initial_energy, t_max, vehicles. Values are
// from + i * step up to `to`. Throws std::invalid_argument on an unknown
// parameter, a non-positive step, or a value that makes the instance invalid.
SweepResult run_sweep(const Instance& inst, std::string_view parameter, double from,
                      double to, double step, const RunSettings& settings);

// Exit status: 0 success, 1 invalid or infeasible input, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sprrp
