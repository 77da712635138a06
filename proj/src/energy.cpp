#include "sprrp/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sprrp {
namespace {

// Daylight accumulated on [0, x] (signed for negative x).
double cumulative_daylight(double x) {
  const double whole = std::floor(x);
  return 0.5 * whole + std::min(x - whole, 0.5);
}

}  // namespace

double solar_power(double t) {
  const double phase = t - std::floor(t);
  return phase < 0.5 ? 1.0 : 0.0;
}

double daylight(double t, double tau) {
  if (!std::isfinite(t) || !std::isfinite(tau)) {
    throw std::invalid_argument("daylight: non-finite argument");
  }
  if (tau < 0) throw std::invalid_argument("daylight: negative duration");
  if (tau == 0) return 0.0;
  const double value = cumulative_daylight(t + tau) - cumulative_daylight(t);
  return std::clamp(value, 0.0, tau);
}

EnergyDelta delta_e(double t, double tau, double draw, double gain_amp) {
  if (draw < 0 || gain_amp < 0) {
    throw std::invalid_argument("delta_e: draw and gain must be non-negative");
  }
  EnergyDelta d;
  d.gain = gain_amp * daylight(t, tau);
  d.draw = draw * tau;
  d.net = d.gain - d.draw;
  return d;
}

}  // namespace sprrp
