#include "sprrp/mip.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json_util.hpp"
#include "sprrp/energy.hpp"
#include "sprrp/format.hpp"
#include "sprrp/graph.hpp"

namespace sprrp {

int MipModel::add_variable(std::string name, VarKind kind, double lower,
                           double upper) {
  variables.push_back({std::move(name), kind, lower, upper});
  return static_cast<int>(variables.size()) - 1;
}

void MipModel::add_constraint(std::string name, LinearExpr expr,
                              Relation relation, double rhs) {
  constraints.push_back({std::move(name), std::move(expr), relation, rhs});
}

namespace {

std::string family(const std::string& name) {
  return name.substr(0, name.find('_'));
}

struct Segments {
  std::vector<double> breakpoints;  // t0 = p_0 < ... < p_S = t_max
  std::vector<double> length;
  std::vector<double> slope;  // 1 in daylight, 0 at night
  std::size_t count() const { return length.size(); }
};

Segments half_sol_segments(double t0, double t_max) {
  Segments s;
  s.breakpoints.push_back(t0);
  for (auto k = static_cast<long long>(std::floor(2.0 * t0)) + 1;; ++k) {
    const double p = 0.5 * static_cast<double>(k);
    if (p >= t_max) break;
    if (p > t0) s.breakpoints.push_back(p);
  }
  s.breakpoints.push_back(t_max);
  for (std::size_t i = 0; i + 1 < s.breakpoints.size(); ++i) {
    const double a = s.breakpoints[i];
    const double b = s.breakpoints[i + 1];
    s.length.push_back(b - a);
    s.slope.push_back(solar_power(0.5 * (a + b)));
  }
  return s;
}

// Variables of one timed event (a non-base node, or the return to base).
struct TimedPoint {
  int t = -1;
  int b = -1;
  std::vector<int> delta;
};

}  // namespace

MipCensus census(const MipModel& model) {
  MipCensus c;
  for (const auto& v : model.variables) {
    ++c.variables[family(v.name)];
    (v.kind == VarKind::kBinary ? c.binaries : c.continuous) += 1;
  }
  for (const auto& con : model.constraints) ++c.constraints[family(con.name)];
  return c;
}

std::string census_json(const MipCensus& c) {
  nlohmann::json root;
  root["variables"] = c.variables;
  root["constraints"] = c.constraints;
  root["binaries"] = c.binaries;
  root["continuous"] = c.continuous;
  return detail::dump_json(root);
}

MipModel linearize(const Instance& inst, const LinearizeOptions& options) {
  const ExpandedGraph graph = expand(inst);
  const Segments seg = half_sol_segments(inst.t0, inst.t_max);
  if (seg.count() > options.max_segments) {
    throw std::length_error("horizon spans " + std::to_string(seg.count()) +
                            " half-sol segments; the limit is " +
                            std::to_string(options.max_segments));
  }

  const auto& nodes = graph.nodes();
  const auto& edges = graph.edges();
  const int vehicles = inst.fleet.vehicle_count;
  const bool closed = inst.options.return_to_base;
  const double capacity = inst.fleet.battery_capacity;
  const double horizon_daylight = daylight(inst.t0, inst.t_max - inst.t0);

  MipModel m;
  std::vector<std::vector<int>> y_of(static_cast<std::size_t>(vehicles));

  for (int k = 0; k < vehicles; ++k) {
    const std::string vk = "k" + std::to_string(k);
    const double scale = inst.fleet.scale(k);
    double max_tau = 0.0;
    for (const auto& e : edges) max_tau = std::max(max_tau, e.duration * scale);
    const double big_t = (inst.t_max - inst.t0) + max_tau;

    std::vector<int> x;
    for (const auto& e : edges) {
      x.push_back(m.add_variable("x_" + vk + "_" + std::to_string(e.from) + "_" +
                                     std::to_string(e.to) + "_" +
                                     std::string(to_string(e.task)),
                                 VarKind::kBinary, 0, 1));
    }
    auto& y = y_of[static_cast<std::size_t>(k)];
    for (const auto& v : nodes) {
      y.push_back(m.add_variable("y_" + vk + "_n" + std::to_string(v.id),
                                 VarKind::kBinary, 0, 1));
    }

    // points[0] is the base (time and battery only), points[1..3n] the PoI
    // nodes, and the last one the return when routes are closed.
    std::vector<TimedPoint> points;
    std::vector<std::string> point_names;
    for (const auto& v : nodes) point_names.push_back("n" + std::to_string(v.id));
    if (closed) point_names.push_back("end");
    for (const auto& name : point_names) {
      TimedPoint p;
      p.t = m.add_variable("t_" + vk + "_" + name, VarKind::kContinuous, inst.t0,
                           inst.t_max);
      points.push_back(p);
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
      points[i].b = m.add_variable("b_" + vk + "_" + point_names[i],
                                   VarKind::kContinuous, 0, capacity);
    }
    std::vector<std::vector<int>> z(points.size());
    for (std::size_t i = 1; i < points.size(); ++i) {
      for (std::size_t s = 0; s < seg.count(); ++s) {
        points[i].delta.push_back(m.add_variable(
            "d_" + vk + "_" + point_names[i] + "_s" + std::to_string(s),
            VarKind::kContinuous, 0, 1));
      }
      for (std::size_t s = 0; s + 1 < seg.count(); ++s) {
        z[i].push_back(m.add_variable(
            "z_" + vk + "_" + point_names[i] + "_s" + std::to_string(s),
            VarKind::kBinary, 0, 1));
      }
    }
    const std::size_t end_point = points.size() - 1;
    auto point_of = [&](NodeId node) {
      return node == kBaseNode ? end_point : static_cast<std::size_t>(node);
    };

    // Flow conservation.
    for (const auto& v : nodes) {
      if (v.id == kBaseNode) continue;
      LinearExpr in;
      for (const auto& e : edges) {
        if (e.to == v.id) in.push_back({x[static_cast<std::size_t>(e.id)], 1});
      }
      in.push_back({y[static_cast<std::size_t>(v.id)], -1});
      m.add_constraint("enter_" + vk + "_n" + std::to_string(v.id), std::move(in),
                       Relation::kEqual, 0);
    }
    for (const auto& v : nodes) {
      LinearExpr out;
      for (EdgeId id : graph.outgoing_ids(v.id)) {
        out.push_back({x[static_cast<std::size_t>(id)], 1});
      }
      out.push_back({y[static_cast<std::size_t>(v.id)], -1});
      const bool may_stop =
          !closed && (v.kind == NodeKind::kPoiMid || v.kind == NodeKind::kPoiOut);
      m.add_constraint("leave_" + vk + "_n" + std::to_string(v.id), std::move(out),
                       may_stop ? Relation::kLessEqual : Relation::kEqual, 0);
    }

    // At most one research and one charge per PoI visit.
    for (int p = 0; p < static_cast<int>(graph.poi_count()); ++p) {
      const auto& r = graph.research_edges(p);
      const auto& c = graph.charge_edges(p);
      const std::string tag = vk + "_p" + std::to_string(p);
      m.add_constraint("oner_" + tag,
                       {{x[static_cast<std::size_t>(r[0])], 1},
                        {x[static_cast<std::size_t>(r[1])], 1}},
                       Relation::kLessEqual, 1);
      m.add_constraint("onec_" + tag,
                       {{x[static_cast<std::size_t>(c[0])], 1},
                        {x[static_cast<std::size_t>(c[1])], 1}},
                       Relation::kLessEqual, 1);
      if (!inst.options.allow_charge_only_visit) {
        m.add_constraint("chgonly_" + tag,
                         {{x[static_cast<std::size_t>(c[0])], 1},
                          {x[static_cast<std::size_t>(r[1])], -1}},
                         Relation::kLessEqual, 0);
      }
    }

    // Time chaining and battery recursion per edge.
    for (const auto& e : edges) {
      const int xe = x[static_cast<std::size_t>(e.id)];
      const TimedPoint& from = points[static_cast<std::size_t>(e.from)];
      const TimedPoint& to = points[point_of(e.to)];
      const double tau = e.duration * scale;
      const std::string tag = vk + "_e" + std::to_string(e.id);

      m.add_constraint("tlo_" + tag, {{to.t, 1}, {from.t, -1}, {xe, -big_t}},
                       Relation::kGreaterEqual, tau - big_t);
      m.add_constraint("thi_" + tag, {{to.t, 1}, {from.t, -1}, {xe, big_t}},
                       Relation::kLessEqual, tau + big_t);

      const double big_b = capacity + e.draw * tau + e.gain_amp * horizon_daylight + 1.0;
      LinearExpr bat{{to.b, 1}, {from.b, -1}};
      if (e.gain_amp > 0) {
        // gain * (F(t_to) - F(t_from)); F(t_base) = F(t0) cancels.
        for (std::size_t s = 0; s < seg.count(); ++s) {
          const double w = e.gain_amp * seg.slope[s] * seg.length[s];
          if (w == 0) continue;
          bat.push_back({to.delta[s], -w});
          if (e.from != kBaseNode) bat.push_back({from.delta[s], w});
        }
      }
      bat.push_back({xe, big_b});
      m.add_constraint("bat_" + tag, std::move(bat), Relation::kLessEqual,
                       -e.draw * tau + big_b);
    }

    // Incremental encoding: t = p0 + sum L_s d_s with d_{s+1} <= z_s <= d_s.
    for (std::size_t i = 1; i < points.size(); ++i) {
      const std::string tag = vk + "_" + point_names[i];
      LinearExpr link{{points[i].t, 1}};
      for (std::size_t s = 0; s < seg.count(); ++s) {
        link.push_back({points[i].delta[s], -seg.length[s]});
      }
      m.add_constraint("tlink_" + tag, std::move(link), Relation::kEqual,
                       seg.breakpoints.front());
      for (std::size_t s = 0; s + 1 < seg.count(); ++s) {
        const std::string at = tag + "_s" + std::to_string(s);
        m.add_constraint("incl_" + at, {{points[i].delta[s + 1], 1}, {z[i][s], -1}},
                         Relation::kLessEqual, 0);
        m.add_constraint("incu_" + at, {{z[i][s], 1}, {points[i].delta[s], -1}},
                         Relation::kLessEqual, 0);
      }
    }

    m.add_constraint("init_t_" + vk, {{points[0].t, 1}}, Relation::kEqual, inst.t0);
    m.add_constraint("init_b_" + vk, {{points[0].b, 1}}, Relation::kEqual,
                     inst.fleet.b0());

    for (const auto& e : edges) {
      if (e.benefit != 0) m.objective.push_back({x[static_cast<std::size_t>(e.id)], e.benefit});
    }
  }

  for (const auto& v : nodes) {
    if (v.id == kBaseNode) continue;
    LinearExpr once;
    for (int k = 0; k < vehicles; ++k) {
      once.push_back({y_of[static_cast<std::size_t>(k)][static_cast<std::size_t>(v.id)], 1});
    }
    m.add_constraint("visit_n" + std::to_string(v.id), std::move(once),
                     Relation::kLessEqual, 1);
  }
  return m;
}

namespace {

bool valid_name(const std::string& name) {
  if (name.empty() || name.size() > 255) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') ||
           (ch >= '0' && ch <= '9') || ch == '_';
  });
}

constexpr std::size_t kWrapColumn = 200;

void write_expr(std::ostringstream& os, const MipModel& model, const LinearExpr& expr,
                std::size_t column) {
  bool first = true;
  for (const LinearTerm& term : expr) {
    if (term.var < 0 || static_cast<std::size_t>(term.var) >= model.variables.size()) {
      throw std::invalid_argument("expression references undeclared variable " +
                                  std::to_string(term.var));
    }
    std::string piece;
    if (term.coef < 0) {
      piece = (first ? "-" : " -") + std::string(" ") + format_number(-term.coef);
    } else {
      piece = (first ? "" : " + ") + format_number(term.coef);
    }
    piece += " " + model.variables[static_cast<std::size_t>(term.var)].name;
    if (column + piece.size() > kWrapColumn) {
      os << "\n ";
      column = 1;
    }
    os << piece;
    column += piece.size();
    first = false;
  }
}

std::string_view relation_text(Relation r) {
  switch (r) {
    case Relation::kLessEqual:
      return "<=";
    case Relation::kGreaterEqual:
      return ">=";
    case Relation::kEqual:
      return "=";
  }
  return "?";
}

}  // namespace

std::string write_lp(const MipModel& model) {
  std::set<std::string> names;
  for (const auto& v : model.variables) {
    if (!valid_name(v.name)) throw std::invalid_argument("bad variable name '" + v.name + "'");
    if (!names.insert(v.name).second) {
      throw std::invalid_argument("duplicate variable name '" + v.name + "'");
    }
  }
  names.clear();
  for (const auto& c : model.constraints) {
    if (!valid_name(c.name)) throw std::invalid_argument("bad constraint name '" + c.name + "'");
    if (!names.insert(c.name).second) {
      throw std::invalid_argument("duplicate constraint name '" + c.name + "'");
    }
  }

  std::ostringstream os;
  os << "Maximize\n obj:";
  if (!model.objective.empty()) {
    os << ' ';
    write_expr(os, model, model.objective, 6);
  }
  os << "\nSubject To\n";
  for (const auto& c : model.constraints) {
    os << ' ' << c.name << ": ";
    write_expr(os, model, c.expr, c.name.size() + 3);
    os << ' ' << relation_text(c.relation) << ' ' << format_number(c.rhs) << '\n';
  }
  os << "Bounds\n";
  for (const auto& v : model.variables) {
    if (v.kind == VarKind::kBinary) continue;
    if (v.lower == v.upper) {
      os << ' ' << v.name << " = " << format_number(v.lower) << '\n';
    } else {
      os << ' ' << format_number(v.lower) << " <= " << v.name
         << " <= " << format_number(v.upper) << '\n';
    }
  }
  os << "Binaries\n";
  for (const auto& v : model.variables) {
    if (v.kind == VarKind::kBinary) os << ' ' << v.name << '\n';
  }
  os << "End\n";
  return os.str();
}

}  // namespace sprrp
