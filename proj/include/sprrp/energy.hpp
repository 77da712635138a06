#pragma once

namespace sprrp {

// Solar input and consumption accumulated over one task.
struct EnergyDelta {
  double gain = 0.0;
  double draw = 0.0;
  double net = 0.0;  // gain - draw
};

// Unit square wave with period one sol: 1 on [k, k + 1/2), 0 on
// [k + 1/2, k + 1).
double solar_power(double t);

// Sunlit time inside [t, t + tau]. Closed form; throws
// std::invalid_argument for negative or non-finite input.
double daylight(double t, double tau);

// Energy exchanged by a task of length tau started at t, drawing `draw`
// per sol and collecting `gain_amp` per sol of daylight.
EnergyDelta delta_e(double t, double tau, double draw, double gain_amp);

}  // namespace sprrp
