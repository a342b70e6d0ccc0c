#include "wepsim/quantum_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wepsim {

BlochState::BlochState(double n, double theta, double phi)
    : n_(n), theta_(theta), phi_raw_(phi) {
  if (!(std::isfinite(n) && std::isfinite(theta) && std::isfinite(phi))) {
    throw std::invalid_argument("BlochState: parameters must be finite");
  }
  if (n < 0.0 || n > 1.0) {
    throw std::invalid_argument("BlochState: n must satisfy 0 <= n <= 1, got " +
                                std::to_string(n));
  }
  if (theta < 0.0 || theta > M_PI) {
    throw std::invalid_argument("BlochState: theta must lie in [0, pi], got " +
                                std::to_string(theta));
  }
}

double BlochState::phi() const {
  const double two_pi = 2.0 * M_PI;
  double p = phi_raw_ - two_pi * std::floor((phi_raw_ + M_PI) / two_pi);
  // floor rounding can leave p == pi when phi_raw is a tiny bit below -pi
  if (p >= M_PI) p -= two_pi;
  return p;
}

DensityMatrix2 density_matrix(const BlochState& s) {
  const double nz = s.n() * std::cos(s.theta());
  const double nperp = s.n() * std::sin(s.theta());
  const Complex off = 0.5 * nperp * std::exp(Complex(0.0, -s.phi()));
  return DensityMatrix2(HermitianOp2(0.5 * (1.0 + nz), 0.5 * (1.0 - nz), off));
}

double coherence(const BlochState& s) { return s.n() * std::sin(s.theta()); }

ArmState::ArmState(const BlochState& qubit, int count) : qubit(qubit), count(count) {
  if (count < 1) {
    throw std::invalid_argument("ArmState: count must be >= 1");
  }
}

}  // namespace wepsim
