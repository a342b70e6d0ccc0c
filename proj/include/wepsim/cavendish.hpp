#pragma once

// Dynamical torsion balance driven by two rotating source masses: fields,
// angular-acceleration statistics, the far-field approximation, and the
// quantum signal-to-noise ratio.
//
// Sign convention: angular accelerations follow the cross-product chain
// torque = R_t x g - (-R_t) x g evaluated with attractive Newtonian fields,
// which makes the classical signal proportional to sin(Theta - Omega t).

#include <vector>

#include "wepsim/geo_frames.hpp"
#include "wepsim/quantum_state.hpp"
#include "wepsim/wep_core.hpp"

namespace wepsim {

struct CavendishConfig {
  CavendishConfig(double m_s, double r_s, double r_t, double omega, double theta_offset,
                  double m, int count, double newton_g = 6.6743e-11);

  double m_s;           // kg, each source mass
  double r_s;           // m, source orbit radius
  double r_t;           // m, test-mass arm radius
  double omega;         // rad/s, source angular speed
  double theta_offset;  // rad, average balance angle Theta
  double m;             // kg, per-arm test mass
  int count;            // N, two-level systems per arm
  double newton_g;      // m^3 kg^-1 s^-2
};

struct SourceDistances {
  double r_plus, r_minus;  // m, test mass to the two sources
};

// Law-of-cosines distances R_+- = sqrt(R_t^2 + R_s^2 +- 2 R_t R_s cos(Omega t - Theta)).
SourceDistances source_distances(const CavendishConfig& cfg, double t);

struct FieldPair {
  Vec3 g_a, g_b;  // m/s^2 at the two arm positions
};

// Two-source Newtonian fields at +R_t and -R_t; g_b = -g_a by point symmetry.
FieldPair g_fields(const CavendishConfig& cfg, double t);

// Classical angular acceleration (rad/s^2):
//   N G m_s (R_s/R_t) (1/R_+^3 - 1/R_-^3) sin(Theta - Omega t)
double classical_angular_accel(const CavendishConfig& cfg, double t);

// classical * F, both arms prepared in the same state.
double angular_accel_mean(const CavendishConfig& cfg, const WepParams& p,
                          const BlochState& s, double t);

// N [G m_s (R_s/R_t) (1/R_+^3 - 1/R_-^3)]^2 sin^2(Theta - Omega t) * G-factor.
// Computed from this display directly, not via the classical value, so sin
// nodes stay exact.
double angular_accel_variance(const CavendishConfig& cfg, const WepParams& p,
                              const BlochState& s, double t);

struct FarFieldAccel {
  double mean;      // rad/s^2
  double variance;  // (rad/s^2)^2
};

// Leading order in R_t/R_s; the signal frequency doubles to 2 Omega:
//   mean     ~  (3 N G m_s / R_s^3) sin(2 Omega t - 2 Theta) F
//   variance ~  (9 N G^2 m_s^2 / R_s^6) sin^2(2 Omega t - 2 Theta) G
FarFieldAccel far_field_angular_accel(const CavendishConfig& cfg, const WepParams& p,
                                      const BlochState& s, double t);

// Documented validity window of the far-field forms.
bool far_field_valid(const CavendishConfig& cfg);

// Sentinel returned when both the quantum and the classical variance vanish.
inline constexpr double kQsnrCap = 1e9;

// qSNR = |<alpha> - alpha_cl| / sqrt(Var(alpha) + delta_alpha_cl^2), with
// delta_alpha_cl the absolute classical uncertainty of alpha_cl.  Requires
// r1 = r2 = 1; both algebraic routes are evaluated and must agree to 1e-10.
double qsnr(const CavendishConfig& cfg, const WepParams& p, const BlochState& s, double t,
            double delta_alpha_cl);

struct QsnrRow {
  double n, theta, phi, r_abs, phi_r, qsnr;
};

struct QsnrGrid {
  std::vector<double> n, theta, phi, r_abs, phi_r;
};

// Cartesian product of the grid axes, evaluated at time t with the classical
// uncertainty given relative to alpha_cl(t).  Row order is the lexicographic
// order of the axes, independent of any parallel evaluation by callers.
std::vector<QsnrRow> qsnr_sweep(const CavendishConfig& cfg, const QsnrGrid& grid, double t,
                                double delta_alpha_cl_rel);

}  // namespace wepsim
