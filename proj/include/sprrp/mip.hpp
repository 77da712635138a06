#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sprrp/instance.hpp"

namespace sprrp {

enum class VarKind : std::uint8_t { kBinary, kContinuous };
enum class Relation : std::uint8_t { kLessEqual, kGreaterEqual, kEqual };

struct MipVariable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = 1.0;
};

struct LinearTerm {
  int var = 0;
  double coef = 0.0;
};

using LinearExpr = std::vector<LinearTerm>;

struct MipConstraint {
  std::string name;
  LinearExpr expr;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

// Maximisation model.
struct MipModel {
  std::vector<MipVariable> variables;
  LinearExpr objective;
  std::vector<MipConstraint> constraints;

  int add_variable(std::string name, VarKind kind, double lower, double upper);
  void add_constraint(std::string name, LinearExpr expr, Relation relation,
                      double rhs);
};

// Counts of variables and constraints grouped by name family (the text
// before the first underscore, e.g. "x", "bat", "init").
struct MipCensus {
  std::map<std::string, std::size_t> variables;
  std::map<std::string, std::size_t> constraints;
  std::size_t binaries = 0;
  std::size_t continuous = 0;

  bool operator==(const MipCensus&) const = default;
};

MipCensus census(const MipModel& model);
std::string census_json(const MipCensus& c);

struct LinearizeOptions {
  std::size_t max_segments = 64;
};

// Linear model of the routing problem per vehicle k:
//   x_k_<i>_<j>_<task>  edge used            y_k_n<j>   node visited
//   t_k_n<j>, t_k_end   event times          b_k_n<j>, b_k_end   battery
//   d_..._s<s>, z_..._s<s>  incremental piecewise encoding of the daylight
//   integral at each timed event, with breakpoints at every half sol.
// Throws std::length_error when the horizon needs more than max_segments
// half-sol segments.
MipModel linearize(const Instance& inst, const LinearizeOptions& options = {});

// CPLEX LP text. Throws std::invalid_argument on names outside
// [A-Za-z0-9_]{1,255} or dangling variable indices.
std::string write_lp(const MipModel& model);

}  // namespace sprrp
