#include "wepsim/eotvos_torque.hpp"

#include <cmath>
#include <stdexcept>

namespace wepsim {

namespace {

constexpr double kDegenerateForce = 1e-300;

double expect(const HermitianOp2& op, const BlochState& s) {
  return expectation(op, density_matrix(s));
}

}  // namespace

ArmMasses::ArmMasses(double m_a, double m_b) : m_a(m_a), m_b(m_b) {
  if (!(m_a > 0.0 && m_b > 0.0)) {
    throw std::invalid_argument("ArmMasses: masses must be positive");
  }
}

TorqueScenario::TorqueScenario(const EotvosGeometry& geo, const BalanceGeometry& balance,
                               const ArmMasses& masses, const WepParams& params,
                               const ArmState& arm_a, const ArmState& arm_b)
    : geo(geo), balance(balance), masses(masses), params(params), arm_a(arm_a), arm_b(arm_b) {
  if (arm_a.count != arm_b.count) {
    throw std::invalid_argument("TorqueScenario: both arms must carry the same qubit count");
  }
}

double fiber_torque(const Vec3& f_a, const Vec3& f_b, const Vec3& r_ab) {
  const double net = (f_a + f_b).norm();
  if (net < kDegenerateForce) {
    throw std::invalid_argument("fiber_torque: net force vanishes, fiber tension undefined");
  }
  return r_ab.dot(f_a.cross(f_b)) / net;
}

double torque_prefactor(const TorqueScenario& sc, double t) {
  const Vec3 beta = inertial_accel(sc.geo, t);
  const Vec3 gamma = gravitational_accel(sc.geo, t);
  const double net = (beta + gamma).norm();
  if (net < kDegenerateForce) {
    throw std::invalid_argument("torque_prefactor: beta + gamma vanishes");
  }
  return sc.masses.reduced() * arm_vector(sc.balance).dot(gamma.cross(beta)) / net;
}

double torque_mean(const TorqueScenario& sc, double t) {
  const double f_a = form_factor_mean(sc.params, sc.arm_a.qubit);
  const double f_b = form_factor_mean(sc.params, sc.arm_b.qubit);
  return sc.arm_a.count * torque_prefactor(sc, t) * (f_a - f_b);
}

double torque_variance(const TorqueScenario& sc, double t) {
  const double g_a = form_factor_variance(sc.params, sc.arm_a.qubit);
  const double g_b = form_factor_variance(sc.params, sc.arm_b.qubit);
  const double tau0 = torque_prefactor(sc, t);
  return sc.arm_a.count * tau0 * tau0 * (g_a + g_b);
}

double phase_averaged_torque_mean(const TorqueScenario& sc, double t) {
  const double half_gap = 0.5 * (sc.params.r1() - sc.params.r2());
  const double polar = sc.arm_a.qubit.n() * std::cos(sc.arm_a.qubit.theta()) -
                       sc.arm_b.qubit.n() * std::cos(sc.arm_b.qubit.theta());
  return sc.arm_a.count * torque_prefactor(sc, t) * half_gap * polar;
}

double GeneralTorque::mean(const BlochState& s_a, const BlochState& s_b) const {
  const double identity_block =
      1.0 + expect(t1_a, s_a) + expect(t1_b, s_b) - expect(t2_a, s_a) - expect(t2_b, s_b);
  return n_tilde * (ratio_diff * identity_block + expect(delta_a, s_a) - expect(delta_b, s_b));
}

GeneralTorque general_torque_operator(const EotvosGeometry& geo,
                                      const BalanceGeometry& balance,
                                      const MassHamiltonians& arm_a,
                                      const MassHamiltonians& arm_b, double t) {
  // Same perturbative guard as the free-fall parametrization.
  (void)params_from_hamiltonians(arm_a);
  (void)params_from_hamiltonians(arm_b);
  if (arm_a.c != arm_b.c) {
    throw std::invalid_argument("general_torque_operator: arms disagree on c");
  }
  const double c_sq = arm_a.c * arm_a.c;

  const Vec3 beta = inertial_accel(geo, t);
  const Vec3 gamma = gravitational_accel(geo, t);
  const double mi_sum = arm_a.m_i + arm_b.m_i;
  const double mg_sum = arm_a.m_g + arm_b.m_g;
  const Vec3 weighted = mi_sum * beta + mg_sum * gamma;
  const double weighted_norm = weighted.norm();
  if (weighted_norm < kDegenerateForce) {
    throw std::invalid_argument("general_torque_operator: weighted net force vanishes");
  }

  GeneralTorque out;
  out.n_tilde = arm_a.m_i * arm_b.m_i * arm_vector(balance).dot(gamma.cross(beta)) /
                weighted_norm;
  out.ratio_diff = arm_a.m_g / arm_a.m_i - arm_b.m_g / arm_b.m_i;

  out.t1_a = (1.0 / (arm_a.m_i * c_sq)) * arm_a.h_i;
  out.t1_b = (1.0 / (arm_b.m_i * c_sq)) * arm_b.h_i;

  const double beta_sq = beta.dot(beta);
  const double gamma_sq = gamma.dot(gamma);
  const double cross_term = 2.0 * beta.dot(gamma);
  const double t2_denom = weighted_norm * weighted_norm * c_sq;
  out.t2_a = (1.0 / t2_denom) *
             (beta_sq * mi_sum * arm_a.h_i + gamma_sq * mg_sum * arm_a.h_g +
              cross_term * (mi_sum * arm_a.h_g + mg_sum * arm_a.h_i));
  out.t2_b = (1.0 / t2_denom) *
             (beta_sq * mi_sum * arm_b.h_i + gamma_sq * mg_sum * arm_b.h_g +
              cross_term * (mi_sum * arm_b.h_g + mg_sum * arm_b.h_i));

  out.delta_a = (1.0 / (arm_a.m_i * arm_a.m_i * c_sq)) *
                (arm_a.m_i * arm_a.h_g - arm_a.m_g * arm_a.h_i);
  out.delta_b = (1.0 / (arm_b.m_i * arm_b.m_i * c_sq)) *
                (arm_b.m_i * arm_b.h_g - arm_b.m_g * arm_b.h_i);
  return out;
}

}  // namespace wepsim
