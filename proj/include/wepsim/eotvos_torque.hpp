#pragma once

// Fiber-parallel torque of the static balance: the classical triple-product
// form, the quantized torque statistics for arms of N identical qubits, and
// the general operator decomposition when the classical masses themselves
// differ between the arms.

#include "wepsim/geo_frames.hpp"
#include "wepsim/quantum_state.hpp"
#include "wepsim/wep_core.hpp"

namespace wepsim {

struct ArmMasses {
  ArmMasses(double m_a, double m_b);

  double m_a, m_b;  // kg
  double reduced() const { return m_a * m_b / (m_a + m_b); }
};

// Full description of one static-balance measurement.  Both arms must carry
// the same number of qubits.
struct TorqueScenario {
  TorqueScenario(const EotvosGeometry& geo, const BalanceGeometry& balance,
                 const ArmMasses& masses, const WepParams& params, const ArmState& arm_a,
                 const ArmState& arm_b);

  EotvosGeometry geo;
  BalanceGeometry balance;
  ArmMasses masses;
  WepParams params;
  ArmState arm_a, arm_b;
};

// tau_parallel = r_AB . (F_A x F_B) / |F_A + F_B|   (N m)
// Throws when the net force vanishes (fiber tension undefined).
double fiber_torque(const Vec3& f_a, const Vec3& f_b, const Vec3& r_ab);

// tau0(t) = mu r_AB . (gamma x beta) / |beta + gamma|, the classical scalar
// multiplying the quantized part of the torque operator.
double torque_prefactor(const TorqueScenario& sc, double t);

// N tau0 (F_A - F_B); vanishes whenever both arms are prepared identically.
double torque_mean(const TorqueScenario& sc, double t);

// N tau0^2 (G_A + G_B), additivity over the 2N independent qubits.
double torque_variance(const TorqueScenario& sc, double t);

// Mean torque after averaging both relative phases over [-pi, pi):
// N tau0 (r1-r2)/2 (n_A cos theta_A - n_B cos theta_B).
double phase_averaged_torque_mean(const TorqueScenario& sc, double t);

// Torque operator without assuming equal inertial and gravitational classical
// masses, decomposed per arm into single-qubit pieces:
//   tau = Ntilde [ ratio_diff (I + T1 - T2) + Delta ]
// with T1, T2, Delta each of the form  X_a (x) I + I (x) X_b  (Delta with a
// relative minus between the arms).
struct GeneralTorque {
  double n_tilde = 0.0;     // N m
  double ratio_diff = 0.0;  // m_gA/m_iA - m_gB/m_iB
  HermitianOp2 t1_a = HermitianOp2::zero(), t1_b = HermitianOp2::zero();
  HermitianOp2 t2_a = HermitianOp2::zero(), t2_b = HermitianOp2::zero();
  HermitianOp2 delta_a = HermitianOp2::zero(), delta_b = HermitianOp2::zero();

  double mean(const BlochState& s_a, const BlochState& s_b) const;
};

GeneralTorque general_torque_operator(const EotvosGeometry& geo,
                                      const BalanceGeometry& balance,
                                      const MassHamiltonians& arm_a,
                                      const MassHamiltonians& arm_b, double t);

}  // namespace wepsim
