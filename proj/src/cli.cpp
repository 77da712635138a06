#include "sprrp/cli.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "sprrp/exact.hpp"
#include "sprrp/format.hpp"
#include "sprrp/graph.hpp"
#include "sprrp/heuristic.hpp"
#include "sprrp/mip.hpp"
#include "sprrp/oracle.hpp"

namespace sprrp {

Solution solve_with(const Instance& inst, const RunSettings& settings) {
  switch (settings.solver) {
    case SolverKind::kExact: {
      SolverConfig cfg;
      cfg.node_budget = settings.node_budget;
      cfg.time_budget_seconds = settings.time_budget_seconds;
      return solve_exact(inst, cfg);
    }
    case SolverKind::kGreedy: {
      const Solution start = greedy_construct(inst, settings.seed);
      return local_search(inst, start, settings.search_budget, settings.seed);
    }
    case SolverKind::kOracle:
      return enumerate_all(inst).best;
  }
  throw std::logic_error("unknown solver");
}

namespace {

void set_parameter(Instance& inst, std::string_view parameter, double value) {
  if (parameter == "battery") {
    inst.fleet.battery_capacity = value;
  } else if (parameter == "initial_energy") {
    inst.fleet.initial_energy = value;
  } else if (parameter == "t_max") {
    inst.t_max = value;
  } else if (parameter == "vehicles") {
    if (value != std::floor(value)) {
      throw std::invalid_argument("vehicles must take integer values");
    }
    inst.fleet.vehicle_count = static_cast<int>(value);
    if (!inst.fleet.duration_scale.empty()) {
      inst.fleet.duration_scale.resize(static_cast<std::size_t>(value), 1.0);
    }
  } else {
    throw std::invalid_argument("unknown sweep parameter '" + std::string(parameter) + "'");
  }
}

}  // namespace

SweepResult run_sweep(const Instance& inst, std::string_view parameter, double from,
                      double to, double step, const RunSettings& settings) {
  if (!(step > 0)) throw std::invalid_argument("sweep step must be positive");
  SweepResult sweep{std::string(parameter), {}};
  for (long i = 0;; ++i) {
    const double value = from + static_cast<double>(i) * step;
    if (value > to + 1e-9 * std::max(1.0, std::abs(to))) break;
    Instance variant = inst;
    set_parameter(variant, parameter, value);
    if (const auto bad = validate(variant); !bad.empty()) {
      throw std::invalid_argument(std::string(parameter) + "=" + format_number(value) +
                                  ": " + bad.front().field + " " + bad.front().rule);
    }
    const ExpandedGraph graph = expand(variant);
    const auto started = std::chrono::steady_clock::now();
    const Solution sol = solve_with(variant, settings);
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - started;
    spdlog::debug("sweep {}={} objective {}", parameter, value, sol.objective);
    sweep.rows.push_back({value, sol.objective, sol.researched(variant.pois.size(), graph),
                          sol.charge_task_count(), sol.status, took.count()});
  }
  return sweep;
}

namespace {

namespace fs = std::filesystem;

struct Common {
  std::string out;
  std::uint64_t seed = 0;
  double time_budget = 600.0;
  std::uint64_t node_budget = 200'000'000;
  std::string log_level = "warn";
};

class Failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void configure_logging(const Common& common) {
  std::string level = common.log_level;
  if (const char* env = std::getenv("SPRRP_LOG"); env != nullptr && *env != '\0') level = env;
  const auto parsed = spdlog::level::from_str(level);
  if (parsed == spdlog::level::off && level != "off") {
    throw Failure("unknown log level '" + level + "'");
  }
  spdlog::set_level(parsed);
}

Instance load_checked(const std::string& path, std::ostream& err) {
  Instance inst = load_instance(path);
  const auto bad = validate(inst);
  if (!bad.empty()) {
    for (const Violation& v : bad) err << v.field << ": " << v.rule << " (" << v.detail << ")\n";
    throw Failure(path + ": invalid instance");
  }
  return inst;
}

fs::path artifact(const Common& common, const std::string& input, const std::string& suffix) {
  const fs::path in(input);
  fs::path dir = common.out.empty() ? in.parent_path() : fs::path(common.out);
  if (!dir.empty()) fs::create_directories(dir);
  return dir / (in.stem().string() + suffix);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Failure("cannot write " + path.string());
  f << text;
  if (!f) throw Failure("cannot write " + path.string());
  spdlog::info("wrote {}", path.string());
}

RunSettings settings_of(const Common& common, SolverKind solver) {
  RunSettings s;
  s.solver = solver;
  s.seed = common.seed;
  s.node_budget = common.node_budget;
  s.time_budget_seconds = common.time_budget;
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solar powered rover routing toolkit", "sprrp"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--out", common.out, "Output directory (default: beside the input)");
  app.add_option("--seed", common.seed, "Random seed")->capture_default_str();
  app.add_option("--time-budget", common.time_budget, "Exact solver time limit in seconds")
      ->check(CLI::PositiveNumber);
  app.add_option("--node-budget", common.node_budget, "Exact solver node limit");
  app.add_option("--log-level", common.log_level, "error, warn, info or debug")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}));

  const std::map<std::string, SolverKind> solvers = {
      {"exact", SolverKind::kExact}, {"greedy", SolverKind::kGreedy}, {"oracle", SolverKind::kOracle}};

  std::string input;
  std::string solver_name = "exact";
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--solver", solver_name, "exact, greedy or oracle")
        ->check(CLI::IsMember({"exact", "greedy", "oracle"}))
        ->capture_default_str();
  };

  CLI::App* validate_cmd = app.add_subcommand("validate", "Check an instance file");
  validate_cmd->add_option("instance", input)->required();

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve and write solution JSON and timeline CSV");
  solve_cmd->add_option("instance", input)->required();
  add_solver(solve_cmd);

  std::string parameter;
  double from = 0, to = 0, step = 1;
  bool timing = false;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Solve over a range of one parameter");
  sweep_cmd->add_option("instance", input)->required();
  sweep_cmd->add_option("--param", parameter)
      ->required()
      ->check(CLI::IsMember({"battery", "initial_energy", "t_max", "vehicles"}));
  sweep_cmd->add_option("--from", from)->required();
  sweep_cmd->add_option("--to", to)->required();
  sweep_cmd->add_option("--step", step)->capture_default_str();
  sweep_cmd->add_flag("--timing", timing, "Add a wall_time column");
  add_solver(sweep_cmd);

  std::size_t max_segments = LinearizeOptions{}.max_segments;
  bool show_census = false;
  CLI::App* mip_cmd = app.add_subcommand("export-mip", "Write the LP model");
  mip_cmd->add_option("instance", input)->required();
  mip_cmd->add_option("--max-segments", max_segments)->capture_default_str();
  mip_cmd->add_flag("--census", show_census, "Print variable and constraint counts");

  CLI::App* graph_cmd = app.add_subcommand("graph", "Write the event graph as DOT");
  graph_cmd->add_option("instance", input)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    configure_logging(common);

    if (validate_cmd->parsed()) {
      const Instance inst = load_instance(input);
      const auto bad = validate(inst);
      for (const Violation& v : bad) out << v.field << ": " << v.rule << " (" << v.detail << ")\n";
      if (bad.empty()) out << input << ": ok\n";
      return bad.empty() ? 0 : 1;
    }

    const Instance inst = load_checked(input, err);
    const SolverKind solver = solvers.at(solver_name);

    if (solve_cmd->parsed()) {
      const ExpandedGraph graph = expand(inst);
      const Solution sol = solve_with(inst, settings_of(common, solver));
      write_file(artifact(common, input, ".solution.json"), solution_json(sol, inst, graph));
      write_file(artifact(common, input, ".timeline.csv"), timeline_csv(sol, inst, graph));
      out << text_report(sol, inst, graph);
      return sol.status == SolveStatus::kInfeasibleEmpty ? 1 : 0;
    }
    if (sweep_cmd->parsed()) {
      const SweepResult sweep = run_sweep(inst, parameter, from, to, step, settings_of(common, solver));
      const std::string csv = sweep_csv(sweep, inst, timing);
      write_file(artifact(common, input, ".sweep-" + parameter + ".csv"), csv);
      out << csv;
      return 0;
    }
    if (mip_cmd->parsed()) {
      const MipModel model = linearize(inst, LinearizeOptions{max_segments});
      write_file(artifact(common, input, ".lp"), write_lp(model));
      const MipCensus c = census(model);
      if (show_census) {
        out << census_json(c);
      } else {
        out << c.binaries << " binaries, " << c.continuous << " continuous, "
            << model.constraints.size() << " constraints\n";
      }
      return 0;
    }
    if (graph_cmd->parsed()) {
      const ExpandedGraph graph = expand(inst);
      write_file(artifact(common, input, ".dot"), to_dot(graph, inst));
      out << graph.nodes().size() << " nodes, " << graph.edges().size() << " edges\n";
      return 0;
    }
  } catch (const InstanceError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace sprrp
