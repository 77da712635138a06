#pragma once

#include <cstdint>
#include <stdexcept>

#include "sprrp/instance.hpp"
#include "sprrp/solution.hpp"

namespace sprrp {

struct OracleResult {
  Solution best;
  std::uint64_t explored = 0;  // complete route sets evaluated
};

class OracleLimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Brute-force reference solver. Enumerates every ordered PoI sequence per
// vehicle with every visit mode (R, C then R, R then C, and C alone when
// charge-only visits are allowed) over disjoint assignments, and propagates
// time and energy with its own midpoint quadrature of the solar square wave.
// Ties on (benefit, busy time) go to the lexicographically smallest route
// encoding. Throws OracleLimitExceeded when the number of route sets exceeds
// hard_limit. With `charging` false no charge task is ever scheduled, as if
// every C edge were deleted.
OracleResult enumerate_all(const Instance& inst,
                           std::uint64_t hard_limit = 1'000'000,
                           bool charging = true);

// Number of route sets enumerate_all considers: tuples of disjoint ordered
// PoI sequences over `vehicles` labelled vehicles, each PoI with one of
// `modes` visit modes. Saturates at UINT64_MAX.
std::uint64_t route_set_count(std::uint64_t pois, std::uint64_t vehicles,
                              std::uint64_t modes);

// Midpoint-rule integral of (sgn(sin 2*pi*s) + 1) / 2 over [t, t + tau] with
// ceil(tau / step) panels, tau / step rounded first when it is within 1e-9
// relative of an integer.
double quadrature_daylight(double t, double tau, double step = 1e-6);

}  // namespace sprrp
