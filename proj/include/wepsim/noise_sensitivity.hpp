#pragma once

// Thermal torque noise of the torsional mode and the chain from instrument
// sensitivity to the smallest detectable variance factor and off-diagonal
// bound.

#include "wepsim/cavendish.hpp"

namespace wepsim {

struct OscillatorNoise {
  OscillatorNoise(double omega_m, double quality, double moment, double temperature);

  double omega_m;      // rad/s, torsional mode frequency
  double quality;      // mechanical Q
  double moment;       // kg m^2
  double temperature;  // K
  double boltzmann = 1.380649e-23;  // J/K
};

// Brownian torque amplitude spectral density sqrt(4 gamma I k_B T) with the
// structural damping rate gamma = omega_m^2 / (omega Q); valid well below the
// torsional resonance.  N m / sqrt(Hz).
double thermal_torque_asd(const OscillatorNoise& n, double omega);

struct SensitivityBudget {
  SensitivityBudget(double torque_asd, double integration_time, double signal_freq);

  double torque_asd;        // N m / sqrt(Hz)
  double integration_time;  // s
  double signal_freq;       // rad/s, where the ASD applies
};

// Smallest variance factor whose angular-acceleration signal power, averaged
// over one source period, exceeds the noise-limited acceleration resolution
// ASD^2 / (I^2 T_int) with I = 2 m R_t^2.  The detection statistic is the
// plain band power; no matched filtering is assumed.
double min_detectable_variance_factor(const SensitivityBudget& budget,
                                      const CavendishConfig& cfg);

// Inversion of the phase-averaged variance at r1 = r2:
//   |r|_max = sqrt(g_min / (1 - n^2 sin^2(theta) / 2))
double off_diagonal_bound(double g_min, double n, double theta);

}  // namespace wepsim
