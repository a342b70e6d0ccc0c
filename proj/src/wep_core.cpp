#include "wepsim/wep_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wepsim {

namespace {

constexpr double kPerturbativeGuard = 1e-3;
constexpr double kEpsilonLimit = 0.3;

double wrap_two_pi(double phi) {
  const double two_pi = 2.0 * M_PI;
  double p = phi - two_pi * std::floor(phi / two_pi);
  if (p >= two_pi) p -= two_pi;
  if (p < 0.0) p += two_pi;
  return p;
}

// Signed half-gap and off-diagonal magnitude show up everywhere below.
double half_gap(const WepParams& p) { return 0.5 * (p.r1() - p.r2()); }

// n [ (r1-r2)/2 cos(theta) + |r| cos(phi_r+phi) sin(theta) ]
double mean_deviation(const WepParams& p, double n, double theta, double phi) {
  return n * (half_gap(p) * std::cos(theta) +
              p.r_abs() * std::cos(p.phi_r() + phi) * std::sin(theta));
}

void check_bloch_angles(double n, double theta) {
  if (!(n >= 0.0 && n <= 1.0)) {
    throw std::invalid_argument("phase average: n must satisfy 0 <= n <= 1");
  }
  if (!(theta >= 0.0 && theta <= M_PI)) {
    throw std::invalid_argument("phase average: theta must lie in [0, pi]");
  }
}

}  // namespace

WepParams::WepParams(double r1, double r2, double r_abs, double phi_r)
    : r1_(r1), r2_(r2), r_abs_(r_abs), phi_r_(wrap_two_pi(phi_r)) {
  if (!(std::isfinite(r1) && std::isfinite(r2) && std::isfinite(r_abs) &&
        std::isfinite(phi_r))) {
    throw std::invalid_argument("WepParams: parameters must be finite");
  }
  if (r_abs < 0.0) {
    throw std::invalid_argument("WepParams: r_abs must be >= 0");
  }
}

Complex WepParams::r() const {
  return r_abs_ * std::exp(Complex(0.0, phi_r_));
}

MassHamiltonians::MassHamiltonians(double m_i, double m_g, const HermitianOp2& h_i,
                                   const HermitianOp2& h_g, double c)
    : m_i(m_i), m_g(m_g), h_i(h_i), h_g(h_g), c(c) {
  if (!(m_i > 0.0 && m_g > 0.0 && c > 0.0)) {
    throw std::invalid_argument("MassHamiltonians: masses and c must be positive");
  }
  if (std::abs(h_i.a12()) != 0.0) {
    throw std::invalid_argument(
        "MassHamiltonians: h_i must be diagonal (it fixes the eigenbasis)");
  }
}

WepParams params_from_hamiltonians(const MassHamiltonians& mh) {
  const double ei = mh.m_i * mh.c * mh.c;
  const double eg = mh.m_g * mh.c * mh.c;
  const double scale =
      std::max({std::abs(mh.h_i.a11()) / ei, std::abs(mh.h_i.a22()) / ei,
                std::abs(mh.h_g.a11()) / eg, std::abs(mh.h_g.a22()) / eg,
                std::abs(mh.h_g.a12()) / eg});
  if (scale >= kPerturbativeGuard) {
    throw std::invalid_argument("params_from_hamiltonians: perturbative regime exceeded");
  }
  const double ratio = mh.m_g / mh.m_i;
  const double r1 = ratio * (1.0 + mh.h_g.a11() / eg - mh.h_i.a11() / ei);
  const double r2 = ratio * (1.0 + mh.h_g.a22() / eg - mh.h_i.a22() / ei);
  const Complex r = ratio * (mh.h_g.a12() / eg);
  return {r1, r2, std::abs(r), std::arg(r)};
}

HermitianOp2 acceleration_operator(const WepParams& p, double g) {
  if (!(g > 0.0)) {
    throw std::invalid_argument("acceleration_operator: g must be positive");
  }
  return {g * p.r1(), g * p.r2(), g * p.r()};
}

double form_factor_mean(const WepParams& p, const BlochState& s) {
  return 0.5 * (p.r1() + p.r2()) + mean_deviation(p, s.n(), s.theta(), s.phi());
}

double form_factor_variance(const WepParams& p, const BlochState& s) {
  const double dev = mean_deviation(p, s.n(), s.theta(), s.phi());
  const double hg = half_gap(p);
  return hg * hg + p.r_abs() * p.r_abs() - dev * dev;
}

double phase_averaged_mean(const WepParams& p, double n, double theta) {
  check_bloch_angles(n, theta);
  return 0.5 * (p.r1() + p.r2()) + half_gap(p) * n * std::cos(theta);
}

double phase_averaged_variance(const WepParams& p, double n, double theta) {
  check_bloch_angles(n, theta);
  const double hg = half_gap(p);
  const double c = std::cos(theta);
  const double sin_sq = 1.0 - c * c;
  return hg * hg * (1.0 - n * n * c * c) +
         p.r_abs() * p.r_abs() * (1.0 - 0.5 * n * n * sin_sq);
}

double eotvos_ratio(const WepParams& p_a, const BlochState& s_a, const WepParams& p_b,
                    const BlochState& s_b, double g) {
  if (!(g > 0.0)) {
    throw std::invalid_argument("eotvos_ratio: g must be positive");
  }
  const double mean_a = form_factor_mean(p_a, s_a);
  const double mean_b = form_factor_mean(p_b, s_b);
  const double denom = std::abs(mean_a + mean_b);
  if (denom == 0.0) {
    throw std::invalid_argument("eotvos_ratio: mean accelerations sum to zero");
  }
  return 2.0 * std::abs(mean_a - mean_b) / denom;
}

double robustness_mean(const WepParams& p, double epsilon, double gamma) {
  if (std::abs(epsilon) >= kEpsilonLimit) {
    throw std::invalid_argument("robustness_mean: |epsilon| must be < 0.3");
  }
  return 0.5 * (p.r1() + p.r2()) - 0.5 * (p.r2() - p.r1()) * std::sin(epsilon) +
         p.r_abs() * std::cos(p.phi_r() + gamma) * std::cos(epsilon);
}

double robustness_phase_averaged_variance(const WepParams& p, double epsilon) {
  if (std::abs(epsilon) >= kEpsilonLimit) {
    throw std::invalid_argument("robustness_phase_averaged_variance: |epsilon| must be < 0.3");
  }
  return phase_averaged_variance(p, 1.0, 0.5 * M_PI + epsilon);
}

}  // namespace wepsim
