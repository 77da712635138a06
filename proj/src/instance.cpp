#include "sprrp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json_util.hpp"

namespace sprrp {

using nlohmann::json;

std::string_view to_string(TaskType type) {
  switch (type) {
    case TaskType::kMove:
      return "M";
    case TaskType::kResearch:
      return "R";
    case TaskType::kCharge:
      return "C";
  }
  return "?";
}

std::optional<TaskType> task_type_from_string(std::string_view text) {
  if (text == "M") return TaskType::kMove;
  if (text == "R") return TaskType::kResearch;
  if (text == "C") return TaskType::kCharge;
  return std::nullopt;
}

std::optional<std::size_t> Instance::poi_index(std::string_view id) const {
  for (std::size_t i = 0; i < pois.size(); ++i) {
    if (pois[i].id == id) return i;
  }
  return std::nullopt;
}

const MovementSpec* Instance::movement(std::string_view from,
                                       std::string_view to) const {
  for (const auto& m : movements) {
    if (m.from == from && m.to == to) return &m;
  }
  return nullptr;
}

InstanceError::InstanceError(Kind kind, std::string field,
                             const std::string& message,
                             std::optional<std::size_t> byte_position)
    : std::runtime_error(message),
      kind_(kind),
      field_(std::move(field)),
      byte_position_(byte_position) {}

namespace {

using Kind = InstanceError::Kind;

// Reads one JSON object while tracking which keys were consumed, so that
// unknown keys are reported instead of silently ignored.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) {
      throw InstanceError(Kind::kBadValue, path_, path_ + ": expected an object");
    }
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  const json& required(const std::string& key) {
    if (!node_.contains(key)) {
      throw InstanceError(Kind::kMissingField, child(key),
                          "missing mandatory field '" + child(key) + "'");
    }
    seen_.insert(key);
    return node_.at(key);
  }

  const json* optional(const std::string& key) {
    if (!node_.contains(key)) return nullptr;
    seen_.insert(key);
    return &node_.at(key);
  }

  double number(const std::string& key) {
    return as_number(required(key), child(key));
  }

  double number_or(const std::string& key, double fallback) {
    const json* value = optional(key);
    return value ? as_number(*value, child(key)) : fallback;
  }

  std::string text(const std::string& key) {
    const json& value = required(key);
    if (!value.is_string()) {
      throw InstanceError(Kind::kBadValue, child(key),
                          child(key) + ": expected a string");
    }
    return value.get<std::string>();
  }

  bool flag_or(const std::string& key, bool fallback) {
    const json* value = optional(key);
    if (!value) return fallback;
    if (!value->is_boolean()) {
      throw InstanceError(Kind::kBadValue, child(key),
                          child(key) + ": expected true or false");
    }
    return value->get<bool>();
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.contains(key)) {
        throw InstanceError(Kind::kBadValue, child(key),
                            "unknown field '" + child(key) + "'");
      }
    }
  }

  std::string child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  static double as_number(const json& value, const std::string& where) {
    if (!value.is_number()) {
      throw InstanceError(Kind::kBadValue, where, where + ": expected a number");
    }
    return value.get<double>();
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

const json& as_array(const json& node, const std::string& path) {
  if (!node.is_array()) {
    throw InstanceError(Kind::kBadValue, path, path + ": expected an array");
  }
  return node;
}

PoiSpec read_poi(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  PoiSpec p;
  p.id = r.text("id");
  p.research_duration = r.number("research_duration");
  p.research_draw = r.number("research_draw");
  p.charge_duration = r.number("charge_duration");
  p.charge_draw = r.number("charge_draw");
  p.research_benefit = r.number_or("research_benefit", 1.0);
  p.move_benefit = r.number_or("move_benefit", 0.0);
  p.charge_benefit = r.number_or("charge_benefit", 0.0);
  r.finish();
  return p;
}

// The benefit default depends on the target PoI, so it is resolved later.
std::pair<MovementSpec, bool> read_movement(const json& node,
                                            const std::string& path) {
  ObjectReader r(node, path);
  MovementSpec m;
  m.from = r.text("from");
  m.to = r.text("to");
  m.duration = r.number("duration");
  m.draw = r.number("draw");
  const bool has_benefit = r.has("benefit");
  m.benefit = r.number_or("benefit", 0.0);
  r.finish();
  return {m, has_benefit};
}

FleetSpec read_fleet(const json& node) {
  ObjectReader r(node, "fleet");
  FleetSpec f;
  if (const json* v = r.optional("vehicles")) {
    if (!v->is_number_integer()) {
      throw InstanceError(Kind::kBadValue, "fleet.vehicles",
                          "fleet.vehicles: expected an integer");
    }
    f.vehicle_count = v->get<int>();
  }
  f.battery_capacity = r.number("battery_capacity");
  if (const json* v = r.optional("initial_energy")) {
    f.initial_energy = ObjectReader::as_number(*v, "fleet.initial_energy");
  }
  if (const json* v = r.optional("duration_scale")) {
    for (const auto& s : as_array(*v, "fleet.duration_scale")) {
      f.duration_scale.push_back(
          ObjectReader::as_number(s, "fleet.duration_scale"));
    }
  }
  r.finish();
  return f;
}

EnergyParams read_energy(const json& node) {
  ObjectReader r(node, "energy");
  EnergyParams e;
  e.sol_period = r.number_or("sol_period", 1.0);
  if (const json* amps = r.optional("gain_amplitude")) {
    ObjectReader a(*amps, "energy.gain_amplitude");
    for (TaskType type : kAllTaskTypes) {
      const std::string key(to_string(type));
      e.gain_amplitude[static_cast<std::size_t>(type)] = a.number_or(key, 1.0);
    }
    a.finish();
  }
  r.finish();
  return e;
}

int endpoint_rank(const Instance& inst, const std::string& id) {
  if (id == kBaseId) return 0;
  auto idx = inst.poi_index(id);
  return idx ? static_cast<int>(*idx) + 1 : static_cast<int>(inst.pois.size()) + 1;
}

bool finite_all(std::initializer_list<double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace

Instance parse_instance(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InstanceError(Kind::kSyntax, "",
                        std::string("syntax error: ") + e.what(), e.byte);
  }

  ObjectReader top(root, "");
  Instance inst;
  if (const json* d = top.optional("description")) {
    if (!d->is_string()) {
      throw InstanceError(Kind::kBadValue, "description",
                          "description: expected a string");
    }
    inst.description = d->get<std::string>();
  }

  const json& pois = as_array(top.required("pois"), "pois");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < pois.size(); ++i) {
    PoiSpec p = read_poi(pois[i], "pois[" + std::to_string(i) + "]");
    if (!ids.insert(p.id).second) {
      throw InstanceError(Kind::kDuplicateId, "pois",
                          "duplicate PoI id '" + p.id + "'");
    }
    inst.pois.push_back(std::move(p));
  }

  const json& moves = as_array(top.required("movements"), "movements");
  for (std::size_t i = 0; i < moves.size(); ++i) {
    auto [m, has_benefit] =
        read_movement(moves[i], "movements[" + std::to_string(i) + "]");
    if (!has_benefit) {
      if (auto target = inst.poi_index(m.to)) {
        m.benefit = inst.pois[*target].move_benefit;
      }
    }
    inst.movements.push_back(std::move(m));
  }

  inst.fleet = read_fleet(top.required("fleet"));
  if (const json* e = top.optional("energy")) inst.energy = read_energy(*e);

  {
    ObjectReader h(top.required("horizon"), "horizon");
    inst.t0 = h.number_or("t0", 0.0);
    inst.t_max = h.number("t_max");
    h.finish();
  }
  if (const json* o = top.optional("options")) {
    ObjectReader r(*o, "options");
    inst.options.return_to_base = r.flag_or("return_to_base", true);
    inst.options.allow_charge_only_visit =
        r.flag_or("allow_charge_only_visit", true);
    r.finish();
  }
  top.finish();

  canonicalize(inst);
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InstanceError(Kind::kInvalid, "", "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

void canonicalize(Instance& inst) {
  std::stable_sort(inst.movements.begin(), inst.movements.end(),
                   [&](const MovementSpec& a, const MovementSpec& b) {
                     const int fa = endpoint_rank(inst, a.from);
                     const int fb = endpoint_rank(inst, b.from);
                     if (fa != fb) return fa < fb;
                     return endpoint_rank(inst, a.to) < endpoint_rank(inst, b.to);
                   });
}

std::vector<Violation> validate(const Instance& inst) {
  std::vector<Violation> out;
  auto flag = [&](std::string field, std::string rule, std::string detail) {
    out.push_back({std::move(field), std::move(rule), std::move(detail)});
  };

  std::set<std::string> ids;
  for (std::size_t i = 0; i < inst.pois.size(); ++i) {
    const PoiSpec& p = inst.pois[i];
    const std::string at = "pois[" + std::to_string(i) + "]";
    if (p.id.empty() || p.id == kBaseId) {
      flag(at + ".id", "id non-empty and not 'base'", "got '" + p.id + "'");
    }
    if (!ids.insert(p.id).second) {
      flag(at + ".id", "PoI ids unique", "duplicate '" + p.id + "'");
    }
    if (!finite_all({p.research_duration, p.research_draw, p.charge_duration,
                     p.charge_draw, p.research_benefit, p.move_benefit,
                     p.charge_benefit})) {
      flag(at, "values finite", "non-finite number");
      continue;
    }
    if (p.research_duration <= 0) flag(at + ".research_duration", "duration > 0", "");
    if (p.charge_duration <= 0) flag(at + ".charge_duration", "duration > 0", "");
    if (p.research_draw < 0) flag(at + ".research_draw", "draw >= 0", "");
    if (p.charge_draw < 0) flag(at + ".charge_draw", "draw >= 0", "");
    if (p.research_benefit < 0) flag(at + ".research_benefit", "benefit >= 0", "");
    if (p.move_benefit < 0) flag(at + ".move_benefit", "benefit >= 0", "");
    if (p.charge_benefit < 0) flag(at + ".charge_benefit", "benefit >= 0", "");
  }

  std::set<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < inst.movements.size(); ++i) {
    const MovementSpec& m = inst.movements[i];
    const std::string at = "movements[" + std::to_string(i) + "]";
    const bool from_ok = m.from == kBaseId || ids.contains(m.from);
    const bool to_ok = m.to == kBaseId || ids.contains(m.to);
    if (!from_ok || !to_ok) {
      flag(at, "endpoints are 'base' or a PoI id",
           "unknown endpoint in " + m.from + "->" + m.to);
    }
    if (m.from == m.to) {
      flag(at, "no self-pairs", m.from + "->" + m.to);
    }
    if (!pairs.insert({m.from, m.to}).second) {
      flag(at, "movement pairs unique", m.from + "->" + m.to);
    }
    if (!finite_all({m.duration, m.draw, m.benefit})) {
      flag(at, "values finite", "non-finite number");
      continue;
    }
    if (m.duration <= 0) flag(at + ".duration", "duration > 0", "");
    if (m.draw < 0) flag(at + ".draw", "draw >= 0", "");
    if (m.benefit < 0) flag(at + ".benefit", "benefit >= 0", "");
  }
  std::vector<std::string> endpoints{std::string(kBaseId)};
  for (const auto& p : inst.pois) endpoints.push_back(p.id);
  for (const auto& a : endpoints) {
    for (const auto& b : endpoints) {
      if (a == b) continue;
      if (!pairs.contains({a, b})) {
        flag("movements", "movement matrix complete", "missing " + a + "->" + b);
      }
    }
  }

  const FleetSpec& f = inst.fleet;
  if (f.vehicle_count < 1) flag("fleet.vehicles", "|K| >= 1", "");
  if (!finite_all({f.battery_capacity, f.b0()})) {
    flag("fleet", "values finite", "non-finite number");
  } else {
    if (f.battery_capacity < 0) flag("fleet.battery_capacity", "B >= 0", "");
    if (f.b0() < 0 || f.b0() > f.battery_capacity) {
      flag("fleet.initial_energy", "0 ≤ b0 ≤ B", "");
    }
  }
  if (!f.duration_scale.empty()) {
    if (f.duration_scale.size() != static_cast<std::size_t>(std::max(0, f.vehicle_count))) {
      flag("fleet.duration_scale", "one scale per vehicle", "");
    }
    for (double s : f.duration_scale) {
      if (!std::isfinite(s) || s <= 0) {
        flag("fleet.duration_scale", "duration_scale > 0", "");
        break;
      }
    }
  }

  if (inst.energy.sol_period != 1.0) flag("energy.sol_period", "T = 1", "");
  for (TaskType type : kAllTaskTypes) {
    const double a = inst.energy.gain(type);
    if (!std::isfinite(a) || a < 0) {
      flag("energy.gain_amplitude." + std::string(to_string(type)),
           "amplitude >= 0", "");
    }
  }

  if (!finite_all({inst.t0, inst.t_max})) {
    flag("horizon", "values finite", "non-finite number");
  } else if (!(inst.t0 < inst.t_max)) {
    flag("horizon", "t0 < t_max", "");
  }
  return out;
}

std::string canonical_serialize(const Instance& input) {
  auto violations = validate(input);
  if (!violations.empty()) {
    throw InstanceError(Kind::kInvalid, violations.front().field,
                        "cannot serialize invalid instance: " +
                            violations.front().field + " violates " +
                            violations.front().rule);
  }
  Instance inst = input;
  canonicalize(inst);

  json root = json::object();
  if (!inst.description.empty()) root["description"] = inst.description;

  json pois = json::array();
  for (const auto& p : inst.pois) {
    pois.push_back({{"id", p.id},
                    {"research_duration", p.research_duration},
                    {"research_draw", p.research_draw},
                    {"charge_duration", p.charge_duration},
                    {"charge_draw", p.charge_draw},
                    {"research_benefit", p.research_benefit},
                    {"move_benefit", p.move_benefit},
                    {"charge_benefit", p.charge_benefit}});
  }
  root["pois"] = std::move(pois);

  json moves = json::array();
  for (const auto& m : inst.movements) {
    moves.push_back({{"from", m.from},
                     {"to", m.to},
                     {"duration", m.duration},
                     {"draw", m.draw},
                     {"benefit", m.benefit}});
  }
  root["movements"] = std::move(moves);

  json fleet = {{"vehicles", inst.fleet.vehicle_count},
                {"battery_capacity", inst.fleet.battery_capacity}};
  if (inst.fleet.initial_energy) fleet["initial_energy"] = *inst.fleet.initial_energy;
  if (!inst.fleet.duration_scale.empty()) {
    fleet["duration_scale"] = inst.fleet.duration_scale;
  }
  root["fleet"] = std::move(fleet);

  json amps = json::object();
  for (TaskType type : kAllTaskTypes) {
    amps[std::string(to_string(type))] = inst.energy.gain(type);
  }
  root["energy"] = {{"sol_period", inst.energy.sol_period},
                    {"gain_amplitude", std::move(amps)}};
  root["horizon"] = {{"t0", inst.t0}, {"t_max", inst.t_max}};
  root["options"] = {
      {"return_to_base", inst.options.return_to_base},
      {"allow_charge_only_visit", inst.options.allow_charge_only_visit}};
  return detail::dump_json(root);
}

}  // namespace sprrp
