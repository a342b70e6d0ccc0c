#pragma once

// Free-fall acceleration operator statistics: the (r1, r2, r) violation
// parametrization, the closed-form mean and variance factors, their phase
// averages, the Eotvos ratio, and the robustness of the statistics to small
// state-preparation errors.

#include "wepsim/linalg2.hpp"
#include "wepsim/quantum_state.hpp"

namespace wepsim {

// Matrix elements of the dimensionless acceleration operator a/g in the
// inertial-energy eigenbasis: diag(r1, r2) plus off-diagonal r_abs e^{i phi_r}.
// phi_r is normalized to [0, 2pi).  The weak equivalence principle holds
// exactly when r1 = r2 = 1 and r_abs = 0.
class WepParams {
 public:
  WepParams(double r1, double r2, double r_abs, double phi_r);

  double r1() const { return r1_; }
  double r2() const { return r2_; }
  double r_abs() const { return r_abs_; }
  double phi_r() const { return phi_r_; }
  Complex r() const;

  static WepParams exact_wep() { return {1.0, 1.0, 0.0, 0.0}; }

 private:
  double r1_, r2_, r_abs_, phi_r_;
};

// Classical masses plus internal-energy Hamiltonians (J) of a two-level test
// body; h_i must be diagonal, fixing the working eigenbasis.  c in m/s,
// masses in kg.
struct MassHamiltonians {
  MassHamiltonians(double m_i, double m_g, const HermitianOp2& h_i,
                   const HermitianOp2& h_g, double c);

  double m_i, m_g;
  HermitianOp2 h_i, h_g;
  double c;
};

// Leading-order (r1, r2, r) from the mass Hamiltonians.  Guards the
// perturbative regime: every |matrix element| / (m c^2) must stay below 1e-3.
WepParams params_from_hamiltonians(const MassHamiltonians& mh);

// g * [[r1, r], [r*, r2]] in m/s^2.
HermitianOp2 acceleration_operator(const WepParams& p, double g);

// Mean of a/g in the given state:
//   F = (r1+r2)/2 + n [ (r1-r2)/2 cos(theta) + |r| cos(phi_r+phi) sin(theta) ]
double form_factor_mean(const WepParams& p, const BlochState& s);

// Variance of a/g in the given state:
//   G = ((r1-r2)/2)^2 + |r|^2 - n^2 [ ... mean deviation ... ]^2
double form_factor_variance(const WepParams& p, const BlochState& s);

// Mean of F over phi uniform on [-pi, pi) (normalized average).
double phase_averaged_mean(const WepParams& p, double n, double theta);

// Mean of G over phi uniform on [-pi, pi):
//   ((r1-r2)/2)^2 (1 - n^2 cos^2 theta) + |r|^2 (1 - n^2/2 sin^2 theta)
double phase_averaged_variance(const WepParams& p, double n, double theta);

// 2 |<a>_A - <a>_B| / |<a>_A + <a>_B| for two preparations in the same field.
double eotvos_ratio(const WepParams& p_a, const BlochState& s_a, const WepParams& p_b,
                    const BlochState& s_b, double g);

// Mean of a/g for a pure state prepared at theta = pi/2 - epsilon with
// relative phase gamma:
//   (r1+r2)/2 - (r2-r1)/2 sin(eps) + |r| cos(phi_r+gamma) cos(eps)
// The deviation from the ideal preparation is first order in epsilon.
// Valid for |epsilon| < 0.3.
double robustness_mean(const WepParams& p, double epsilon, double gamma);

// Exact gamma-averaged variance of a/g for the same imperfect preparation
// (even in epsilon, so the sign convention of epsilon is immaterial):
//   ((r1-r2)/2)^2 cos^2(eps) + |r|^2 (1 - cos^2(eps)/2)
// The deviation from the ideal value is second order in epsilon.
double robustness_phase_averaged_variance(const WepParams& p, double epsilon);

}  // namespace wepsim
