#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sprrp {

// Movement, research, charging.
enum class TaskType : std::uint8_t { kMove = 0, kResearch = 1, kCharge = 2 };

inline constexpr std::array<TaskType, 3> kAllTaskTypes = {
    TaskType::kMove, TaskType::kResearch, TaskType::kCharge};

std::string_view to_string(TaskType type);
std::optional<TaskType> task_type_from_string(std::string_view text);

// Reserved endpoint name for the depot in movement specs.
inline constexpr std::string_view kBaseId = "base";

struct PoiSpec {
  std::string id;
  double research_duration = 0.0;
  double research_draw = 0.0;
  double charge_duration = 0.0;
  double charge_draw = 0.0;
  double research_benefit = 1.0;
  // Default benefit of movements entering this PoI when a movement entry
  // does not state its own.
  double move_benefit = 0.0;
  double charge_benefit = 0.0;

  bool operator==(const PoiSpec&) const = default;
};

struct MovementSpec {
  std::string from;
  std::string to;
  double duration = 0.0;
  double draw = 0.0;
  double benefit = 0.0;

  bool operator==(const MovementSpec&) const = default;
};

struct EnergyParams {
  double sol_period = 1.0;
  // Solar gain per unit of daylight, indexed by TaskType.
  std::array<double, 3> gain_amplitude = {1.0, 1.0, 1.0};

  double gain(TaskType type) const {
    return gain_amplitude[static_cast<std::size_t>(type)];
  }

  bool operator==(const EnergyParams&) const = default;
};

struct FleetSpec {
  int vehicle_count = 1;
  double battery_capacity = 0.0;
  // Absent means the battery starts full.
  std::optional<double> initial_energy;
  // Empty means every vehicle runs at scale 1.
  std::vector<double> duration_scale;

  double b0() const { return initial_energy.value_or(battery_capacity); }
  double scale(int vehicle) const {
    return duration_scale.empty()
               ? 1.0
               : duration_scale[static_cast<std::size_t>(vehicle)];
  }

  bool operator==(const FleetSpec&) const = default;
};

struct Options {
  bool return_to_base = true;
  bool allow_charge_only_visit = true;

  bool operator==(const Options&) const = default;
};

struct Instance {
  std::string description;
  std::vector<PoiSpec> pois;
  std::vector<MovementSpec> movements;
  FleetSpec fleet;
  EnergyParams energy;
  double t0 = 0.0;
  double t_max = 0.0;
  Options options;

  std::optional<std::size_t> poi_index(std::string_view id) const;
  // Movement between two endpoints, each either a PoI id or kBaseId.
  const MovementSpec* movement(std::string_view from, std::string_view to) const;

  bool operator==(const Instance&) const = default;
};

class InstanceError : public std::runtime_error {
 public:
  enum class Kind { kSyntax, kMissingField, kDuplicateId, kBadValue, kInvalid };

  InstanceError(Kind kind, std::string field, const std::string& message,
                std::optional<std::size_t> byte_position = std::nullopt);

  Kind kind() const { return kind_; }
  const std::string& field() const { return field_; }
  std::optional<std::size_t> byte_position() const { return byte_position_; }

 private:
  Kind kind_;
  std::string field_;
  std::optional<std::size_t> byte_position_;
};

struct Violation {
  std::string field;
  std::string rule;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);

std::vector<Violation> validate(const Instance& inst);

// Sorts movements by (from, to) with base ranked first and PoIs in list order.
void canonicalize(Instance& inst);

// Sorted keys, two-space indent, shortest round-trip numbers, trailing
// newline. Throws InstanceError(kInvalid) when validate() is non-empty.
std::string canonical_serialize(const Instance& inst);

}  // namespace sprrp
