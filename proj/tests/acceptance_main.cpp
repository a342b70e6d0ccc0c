// Acceptance suite: one line per criterion, [PASS] or [FAIL], with measured
// values printed for anything that misses its target.  Exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/runner.hpp"
#include "wepsim/cavendish.hpp"
#include "wepsim/ensemble.hpp"
#include "wepsim/eotvos_torque.hpp"
#include "wepsim/noise_sensitivity.hpp"

using namespace wepsim;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
  std::printf("[%s] %s%s%s\n", pass ? "PASS" : "FAIL", id.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++g_failures;
}

std::mt19937_64 g_rng(20250808ULL);
double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g_rng);
}

WepParams random_params() {
  return {uniform(0.8, 1.2), uniform(0.8, 1.2), uniform(0.0, 0.3), uniform(0.0, 2.0 * M_PI)};
}
BlochState random_state() {
  return {uniform(0.0, 1.0), uniform(0.0, M_PI), uniform(-M_PI, M_PI)};
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- criterion 1: closed-form factors against the trace oracle ------------

void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const WepParams p = random_params();
    const BlochState s = random_state();
    const DensityMatrix2 rho = density_matrix(s);
    const HermitianOp2 a = acceleration_operator(p, 1.0);
    const double mean = form_factor_mean(p, s);
    const double var = form_factor_variance(p, s);
    if (std::abs(mean - expectation(a, rho)) > 1e-10 * std::max(1.0, std::abs(mean))) ++bad;
    if (std::abs(var - variance(a, rho)) > 1e-10 * std::max(1.0, var)) ++bad;
  }
  const double dt = elapsed_s(start);
  std::ostringstream d;
  d << "10000 random draws, " << bad << " mismatches, " << dt << " s";
  report("1. mean/variance factors match the trace oracle at 1e-10", bad == 0 && dt < 5.0,
         d.str());
}

// ---- criterion 2: everything is exact when the wep holds ------------------

void criterion_2() {
  const WepParams wep = WepParams::exact_wep();
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const BlochState s_a = random_state(), s_b = random_state();
    if (form_factor_mean(wep, s_a) != 1.0) ++bad;
    if (form_factor_variance(wep, s_a) != 0.0) ++bad;

    EotvosGeometry geo = EotvosGeometry::at_latitude(uniform(-1.4, 1.4));
    geo.orbital_phase = uniform(0.0, 2.0 * M_PI);
    const TorqueScenario sc(geo, BalanceGeometry(uniform(0.01, 1.0), uniform(0, 6.28),
                                                 uniform(-0.3, 0.3)),
                            ArmMasses(uniform(0.001, 1.0), uniform(0.001, 1.0)), wep,
                            ArmState(s_a, 1 + i % 5), ArmState(s_b, 1 + i % 5));
    const double t = uniform(0.0, 86400.0);
    if (std::abs(torque_mean(sc, t)) > 1e-12) ++bad;
    if (std::abs(torque_variance(sc, t)) > 1e-12) ++bad;

    const CavendishConfig cfg(uniform(0.5, 2.0), 0.2, uniform(0.001, 0.05),
                              uniform(0.1, 1.0), uniform(0.0, 6.28), uniform(1e-6, 1e-2),
                              1 + i % 7);
    const double tc = uniform(0.0, 60.0);
    const double alpha_cl = classical_angular_accel(cfg, tc);
    if (std::abs(angular_accel_mean(cfg, wep, s_a, tc) - alpha_cl) >
        1e-12 * std::max(1.0, std::abs(alpha_cl)))
      ++bad;
    if (angular_accel_variance(cfg, wep, s_a, tc) != 0.0) ++bad;
  }
  report("2. exact null at the wep point across 1000 random scenes", bad == 0,
         bad ? std::to_string(bad) + " nonzero observables" : "");
}

// ---- criterion 3: phase-ensemble statistics --------------------------------

void criterion_3() {
  const auto start = std::chrono::steady_clock::now();
  PhaseRng rng(20250807ULL);
  const CosPhaseResult big = cos_phase_experiment(rng, 100000, 50);
  const bool mean_ok = std::abs(big.mean) <= 3.0 * big.standard_error;
  const bool se_ok = std::abs(big.standard_error - 2.236e-3) <= 0.05 * 2.236e-3;

  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PhaseRng r(1000 + seed);
    const CosPhaseResult res = cos_phase_experiment(r, 1000, 20);
    if (std::abs(res.mean) <= 2.0 * res.standard_error) ++hits;
  }
  const double dt = elapsed_s(start);
  std::ostringstream d;
  d << "mean=" << big.mean << " se=" << big.standard_error << " hits=" << hits << "/100, "
    << dt << " s";
  report("3. cos(gamma) ensemble: zero-compatible mean, se=2.24e-3(5%), >=90/100 seeds",
         mean_ok && se_ok && hits >= 90 && dt < 2.0, d.str());
}

// ---- criterion 4: the phase-averaged variance is the exact phi average ----

void criterion_4() {
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const WepParams p = random_params();
    const double n = uniform(0.0, 1.0), theta = uniform(0.0, M_PI);
    double quad = 0.0;
    const int k = 64;
    for (int j = 0; j < k; ++j) {
      quad += form_factor_variance(p, BlochState(n, theta, -M_PI + 2.0 * M_PI * (j + 0.5) / k));
    }
    quad /= k;
    if (std::abs(quad - phase_averaged_variance(p, n, theta)) > 1e-10 * std::max(1.0, quad))
      ++bad;
  }
  report("4. quadrature of the variance over phi matches the closed average at 1e-10",
         bad == 0, bad ? std::to_string(bad) + " mismatches" : "");
}

// ---- criterion 5: preparation-error robustness -----------------------------

void criterion_5() {
  int bad_slope = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const WepParams p = random_params();
    const double gamma = uniform(-M_PI, M_PI);
    const double eps = 1e-4;
    const double slope =
        (robustness_mean(p, eps, gamma) - robustness_mean(p, -eps, gamma)) / (2.0 * eps);
    const double err = std::abs(slope - (-(p.r2() - p.r1()) / 2.0));
    worst = std::max(worst, err);
    if (err > 1e-6) ++bad_slope;
  }
  report("5a. mean slope at eps -> 0 equals -(r2-r1)/2 within 1e-6", bad_slope == 0,
         "worst error " + std::to_string(worst));

  // Quadratic coefficient of the phase-averaged variance, fitted over
  // eps in [0.01, 0.1].  The stated target is -[((r1-r2)/2)^2 - |r|^2/2]/2;
  // the exact gamma-averaged variance deviates as -K sin^2(eps) with
  // K = ((r1-r2)/2)^2 - |r|^2/2, i.e. twice the stated coefficient, so this
  // check is expected to miss by a factor of 2.  Both numbers are printed.
  const WepParams p(1.08, 0.94, 0.21, 1.7);
  const double d_half = 0.5 * (p.r1() - p.r2());
  const double k_exact = d_half * d_half - 0.5 * p.r_abs() * p.r_abs();
  double num = 0.0, den = 0.0;
  for (double eps = 0.01; eps <= 0.1 + 1e-12; eps += 0.01) {
    const double dev = robustness_phase_averaged_variance(p, eps) -
                       robustness_phase_averaged_variance(p, 0.0);
    num += dev * eps * eps;
    den += eps * eps * eps * eps;
  }
  const double fitted = num / den;
  const double stated_target = -0.5 * k_exact;
  const bool pass = std::abs(fitted - stated_target) <= 0.01 * std::abs(stated_target);
  std::ostringstream d;
  d << "fitted=" << fitted << " stated_target=" << stated_target
    << " exact_model_coefficient=" << -k_exact;
  report("5b. variance quadratic coefficient matches -[((r1-r2)/2)^2-|r|^2/2]/2 within 1%",
         pass, d.str());
}

// ---- criterion 6: daily envelope of the torque prefactor ------------------

void criterion_6() {
  const auto start = std::chrono::steady_clock::now();
  const WepParams wep = WepParams::exact_wep();
  const ArmMasses masses(0.03, 0.03);
  const ArmState arm(BlochState(1, 0, 0), 1);
  double env_lo = 1e300, env_hi = 0.0;
  for (double lat_deg : {30.0, 45.0, 60.0}) {
    for (double theta_tilde : {0.0, 0.25 * M_PI}) {
      const EotvosGeometry geo = EotvosGeometry::at_latitude(lat_deg * M_PI / 180.0);
      double peak = 0.0;
      for (int i = 0; i <= 288; ++i) {
        const double t = 86400.0 * i / 288.0;
        const BalanceGeometry bg(0.1, theta_tilde, fiber_tilt(geo, t));
        const TorqueScenario sc(geo, bg, masses, wep, arm, arm);
        peak = std::max(peak,
                        std::abs(torque_prefactor(sc, t)) / (masses.reduced() * bg.ell));
      }
      env_lo = std::min(env_lo, peak);
      env_hi = std::max(env_hi, peak);
    }
  }
  const double dt = elapsed_s(start);
  const bool in_band = env_lo >= 1e-9 && env_hi <= 1e-7;
  const bool near_anchor = env_lo >= 1e-8 / 3.0 && env_hi <= 3.0 * 1e-8;
  std::ostringstream d;
  d << "measured daily peaks " << env_lo << " .. " << env_hi
    << " m/s^2 (the solar horizontal acceleration scale); band [1e-9, 1e-7], anchor 3x 1e-8, "
    << dt << " s";
  report("6. |tau0|/(mu ell) daily extremum in [1e-9, 1e-7] and within 3x of 1e-8",
         in_band && near_anchor && dt < 1.0, d.str());
}

// ---- criterion 7: rotating-source consistency ------------------------------

void criterion_7() {
  const CavendishConfig cfg(1.0, 0.2, 0.05, 2.0 * M_PI * 0.05, 0.3, 0.01, 1);
  int bad_chain = 0;
  for (int i = 0; i < 500; ++i) {
    const double t = uniform(0.0, 40.0);
    const FieldPair f = g_fields(cfg, t);
    const Vec3 rt{cfg.r_t * std::cos(cfg.theta_offset), cfg.r_t * std::sin(cfg.theta_offset),
                  0.0};
    const double chain = rt.cross(f.g_a - f.g_b).z / (2.0 * cfg.r_t * cfg.r_t);
    if (std::abs(classical_angular_accel(cfg, t) - chain) >
        1e-12 * std::max(1e-8, std::abs(chain)))
      ++bad_chain;
  }

  const WepParams p(1.0, 1.0, 0.05, 1.3);
  const BlochState s(0.6, 1.2, 0.5);
  const double u_probe = 0.4;
  std::vector<double> lr, le;
  for (double ratio : {0.01, 0.02, 0.04, 0.08}) {
    const CavendishConfig c(1.0, 0.2, ratio * 0.2, cfg.omega, cfg.theta_offset, 0.01, 3);
    const double t_probe = (u_probe + c.theta_offset) / c.omega;
    const double exact = angular_accel_mean(c, p, s, t_probe);
    const double far = far_field_angular_accel(c, p, s, t_probe).mean;
    lr.push_back(std::log(ratio));
    le.push_back(std::log(std::abs(far - exact) / std::abs(exact)));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lr.size(); ++i) {
    sx += lr[i];
    sy += le[i];
    sxx += lr[i] * lr[i];
    sxy += lr[i] * le[i];
  }
  const double m = static_cast<double>(lr.size());
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);

  const CavendishConfig ff(1.0, 0.2, 0.01, 2.0 * M_PI * 0.05, 0.3, 0.01, 3);
  const int samples = 256;
  const double period = 2.0 * M_PI / ff.omega;
  int peak_bin = 0;
  double peak_mag = 0.0;
  for (int k = 1; k <= samples / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double w = far_field_angular_accel(ff, p, s, period * i / samples).mean;
      acc += w * std::exp(std::complex<double>(0.0, -2.0 * M_PI * k * i / samples));
    }
    if (std::abs(acc) > peak_mag) {
      peak_mag = std::abs(acc);
      peak_bin = k;
    }
  }

  std::ostringstream d;
  d << bad_chain << " chain mismatches, far-field log-log slope " << slope
    << ", spectral peak at " << peak_bin << " x Omega";
  report("7. classical acceleration = cross-product chain; slope 2 +- 0.2; line at 2 Omega",
         bad_chain == 0 && std::abs(slope - 2.0) <= 0.2 && peak_bin == 2, d.str());
}

// ---- criterion 8: qsnr behavior --------------------------------------------

void criterion_8() {
  const CavendishConfig cfg(1.0, 0.2, 0.0075, 2.0 * M_PI * 0.05, 0.0, 1.78e-6, 100000);
  const double t = 2.5;
  QsnrGrid grid;
  for (int i = 0; i <= 10; ++i) grid.n.push_back(0.05 + 0.09 * i);
  grid.theta = {0.5 * M_PI};
  grid.phi = {0.0};
  grid.r_abs = {1e-4, 3e-4, 1e-3, 3e-3};
  grid.phi_r = {0.0};
  const auto rows = qsnr_sweep(cfg, grid, t, 1e-5);
  bool monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i % grid.r_abs.size() != 0 && !(rows[i].qsnr > rows[i - 1].qsnr)) monotone = false;
    if (i >= grid.r_abs.size() && !(rows[i].qsnr > rows[i - grid.r_abs.size()].qsnr))
      monotone = false;
  }

  // zeros and the maximizer
  const WepParams p(1.0, 1.0, 1e-3, 0.0);
  const double delta = 1e-5 * std::abs(classical_angular_accel(cfg, t));
  const bool zeros = qsnr(cfg, p, BlochState(0.0, 1.0, 0.2), t, delta) == 0.0 &&
                     std::abs(qsnr(cfg, p, BlochState(1.0, 0.0, 0.2), t, delta)) <= 1e-12 &&
                     std::abs(qsnr(cfg, p, BlochState(1.0, M_PI, 0.2), t, delta)) <= 1e-12 &&
                     std::abs(qsnr(cfg, p, BlochState(1.0, 0.5 * M_PI, 0.5 * M_PI), t,
                                   delta)) <= 1e-12;
  double best = -1.0, best_n = -1, best_theta = -1, best_phi = 0;
  for (double n : {0.0, 0.5, 1.0}) {
    for (int it = 0; it <= 8; ++it) {
      for (int ip = -8; ip <= 8; ++ip) {
        const double v =
            qsnr(cfg, p, BlochState(n, M_PI * it / 8.0, M_PI * ip / 8.0), t, delta);
        if (v > best) {
          best = v;
          best_n = n;
          best_theta = M_PI * it / 8.0;
          best_phi = M_PI * ip / 8.0;
        }
      }
    }
  }
  const double fold = std::fmod(std::abs(best_phi), M_PI);
  const bool max_ok = best_n == 1.0 && std::abs(best_theta - 0.5 * M_PI) <= 1e-12 &&
                      (fold <= 1e-9 || M_PI - fold <= 1e-9);

  // sqrt(N) scaling with no classical noise
  const BlochState working(0.9, 0.5 * M_PI, 0.0);
  const CavendishConfig big(cfg.m_s, cfg.r_s, cfg.r_t, cfg.omega, cfg.theta_offset, cfg.m,
                            4 * cfg.count);
  const double ratio = qsnr(big, p, working, t, 0.0) / qsnr(cfg, p, working, t, 0.0);

  std::ostringstream d;
  d << "monotone=" << monotone << " zeros=" << zeros << " max at (n=" << best_n
    << ", theta=" << best_theta << ", phi=" << best_phi << "), 4N/N ratio=" << ratio;
  report("8. qsnr monotone on the optimized slice, zeros/maxima as derived, sqrt(N) gain",
         monotone && zeros && max_ok && std::abs(ratio - 2.0) <= 1e-6, d.str());
}

// ---- criterion 9: from instrument noise to the |r| bound ------------------

void criterion_9() {
  const double r_t = 7.5e-3;  // half the 15 mm oscillator length
  const double moment = 2e-10;
  const CavendishConfig cfg(1.0, 0.2, r_t, 2.0 * M_PI * 50.0, 0.0,
                            moment / (2.0 * r_t * r_t), 1000);
  const SensitivityBudget budget(2e-17, 9.0 * 3600.0, 2.0 * M_PI * 100.0);
  const double g_min = min_detectable_variance_factor(budget, cfg);
  const bool g_ok = g_min > 1.6e-6 / 3.0 && g_min < 1.6e-6 * 3.0;

  const SensitivityBudget improved(2e-17 / 25.0, 9.0 * 3600.0, 2.0 * M_PI * 100.0);
  const double bound = off_diagonal_bound(g_min, 0.9, 0.5 * M_PI);
  const double bound_improved =
      off_diagonal_bound(min_detectable_variance_factor(improved, cfg), 0.9, 0.5 * M_PI);
  const double gain = bound / bound_improved;
  const double seeded = 4e-3 / gain;

  std::ostringstream d;
  d << "g_min=" << g_min << " (target 1.6e-6 within 3x), bound gain=" << gain << ", 4e-3 -> "
    << seeded;
  report("9. noise chain: g_min within 3x of 1.6e-6; 25x asd maps 4e-3 to 1.6e-4",
         g_ok && std::abs(gain - 25.0) <= 1e-9 && std::abs(seeded - 1.6e-4) <= 1e-12,
         d.str());
}

// ---- criterion 10: thermal-noise scaling anchors ---------------------------

void criterion_10() {
  const double omega = 2.0 * M_PI * 100.0;
  const OscillatorNoise base(2.0 * M_PI * 0.5, 1e5, 2e-10, 300.0);
  const double ref = thermal_torque_asd(base, omega);
  const OscillatorNoise hot(base.omega_m, base.quality, base.moment, 4.0 * base.temperature);
  const OscillatorNoise stiff(base.omega_m, 4.0 * base.quality, base.moment,
                              base.temperature);
  const bool temp_ok = std::abs(thermal_torque_asd(hot, omega) - 2.0 * ref) <= 1e-12 * ref;
  const bool q_ok = std::abs(thermal_torque_asd(stiff, omega) - 0.5 * ref) <= 1e-12 * ref;
  const bool freq_ok =
      std::abs(thermal_torque_asd(base, 4.0 * omega) - 0.5 * ref) <= 1e-12 * ref;

  // parameters solved for the 8e-19 floor, then the exact 25x ratio
  const double target = 8e-19;
  const double quality = 4.0 * base.omega_m * base.omega_m * base.moment * 1.380649e-23 *
                         300.0 / (omega * target * target);
  const OscillatorNoise floor_osc(base.omega_m, quality, base.moment, 300.0);
  const double ratio = 2e-17 / thermal_torque_asd(floor_osc, omega);

  std::ostringstream d;
  d << "sqrt(T)=" << temp_ok << " 1/sqrt(wQ)=" << (q_ok && freq_ok) << " ratio=" << ratio;
  report("10. thermal asd scaling laws exact; 2e-17 / 8e-19 = 25",
         temp_ok && q_ok && freq_ok && std::abs(ratio - 25.0) <= 1e-9, d.str());
}

// ---- criterion 11: deterministic tool output -------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void criterion_11() {
  const auto start = std::chrono::steady_clock::now();
  const std::string bin = WEP_TORSIM_BIN;
  const fs::path config_dir = WEP_TORSIM_CONFIG_DIR;
  const fs::path tmp = "acceptance_tmp";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  bool ok = true;
  std::ostringstream d;

  // byte-identical outputs across two runs of the seeded ensemble scenario
  for (const char* out : {"a", "b"}) {
    const std::string cmd = bin + " montecarlo --config " +
                            (config_dir / "montecarlo_phases.cfg").string() + " --out " +
                            (tmp / out).string();
    if (std::system(cmd.c_str()) != 0) ok = false;
  }
  for (const char* name : {"cos_phase_stats.csv", "cos_phase_histogram.csv", "manifest"}) {
    if (slurp(tmp / "a" / name) != slurp(tmp / "b" / name) ||
        slurp(tmp / "a" / name).empty()) {
      ok = false;
      d << "non-identical " << name << "; ";
    }
  }

  // --verify on every shipped config
  int verified = 0;
  for (const auto& entry : fs::directory_iterator(config_dir)) {
    if (entry.path().extension() != ".cfg") continue;
    const std::string stem = entry.path().stem().string();
    const std::string mode = stem.substr(0, stem.find('_'));
    const std::string cmd = bin + " " + mode + " --config " + entry.path().string() +
                            " --out " + (tmp / stem).string() + " --verify";
    if (std::system(cmd.c_str()) != 0) {
      ok = false;
      d << "verify failed for " << stem << "; ";
    } else {
      ++verified;
    }
  }
  const double dt = elapsed_s(start);
  d << verified << " configs verified, " << dt << " s";
  report("11. byte-identical reruns and --verify across the shipped configs",
         ok && verified >= 5, d.str());
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("acceptance: %d failed, total %.2f s\n", g_failures, elapsed_s(start));
  return g_failures;
}
