#include "wepsim/noise_sensitivity.hpp"

#include <cmath>
#include <stdexcept>

namespace wepsim {

OscillatorNoise::OscillatorNoise(double omega_m, double quality, double moment,
                                 double temperature)
    : omega_m(omega_m), quality(quality), moment(moment), temperature(temperature) {
  if (!(omega_m > 0.0 && quality > 0.0 && moment > 0.0 && temperature > 0.0)) {
    throw std::invalid_argument("OscillatorNoise: all parameters must be positive");
  }
}

double thermal_torque_asd(const OscillatorNoise& n, double omega) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("thermal_torque_asd: omega must be positive");
  }
  const double damping = n.omega_m * n.omega_m / (omega * n.quality);
  return std::sqrt(4.0 * damping * n.moment * n.boltzmann * n.temperature);
}

SensitivityBudget::SensitivityBudget(double torque_asd, double integration_time,
                                     double signal_freq)
    : torque_asd(torque_asd), integration_time(integration_time), signal_freq(signal_freq) {
  if (!(torque_asd > 0.0 && integration_time > 0.0 && signal_freq > 0.0)) {
    throw std::invalid_argument("SensitivityBudget: all parameters must be positive");
  }
}

double min_detectable_variance_factor(const SensitivityBudget& budget,
                                      const CavendishConfig& cfg) {
  const double moment = 2.0 * cfg.m * cfg.r_t * cfg.r_t;
  const double accel_noise_var = budget.torque_asd * budget.torque_asd /
                                 (moment * moment * budget.integration_time);

  // Period average of the squared signal amplitude; midpoint rule on a smooth
  // periodic integrand converges far below the tolerances in play.
  const double period = 2.0 * M_PI / cfg.omega;
  const int steps = 512;
  double mean_sq = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double t = period * (i + 0.5) / steps;
    const double one = classical_angular_accel(cfg, t) / cfg.count;
    mean_sq += one * one;
  }
  mean_sq /= steps;

  return accel_noise_var / (cfg.count * mean_sq);
}

double off_diagonal_bound(double g_min, double n, double theta) {
  if (g_min < 0.0) {
    throw std::invalid_argument("off_diagonal_bound: g_min must be >= 0");
  }
  if (!(n >= 0.0 && n <= 1.0)) {
    throw std::invalid_argument("off_diagonal_bound: n must satisfy 0 <= n <= 1");
  }
  const double s = std::sin(theta);
  return std::sqrt(g_min / (1.0 - 0.5 * n * n * s * s));
}

}  // namespace wepsim
