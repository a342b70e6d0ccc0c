#pragma once

// Bloch-parametrized qubit preparations.

#include "wepsim/linalg2.hpp"

namespace wepsim {

// Qubit preparation in coherence-vector form: magnitude n in [0, 1], polar
// angle theta in [0, pi], azimuth phi (any value accepted, normalized to
// [-pi, pi) on read).  theta outside [0, pi] is rejected rather than folded,
// since folding would silently change the meaning of phi.
class BlochState {
 public:
  BlochState(double n, double theta, double phi);

  double n() const { return n_; }
  double theta() const { return theta_; }
  double phi() const;  // normalized into [-pi, pi)

 private:
  double n_, theta_, phi_raw_;
};

// rho = (I + n . sigma) / 2; eigenvalues (1 +- n)/2.
DensityMatrix2 density_matrix(const BlochState& s);

// Energy-basis coherence, sum of |off-diagonal| elements = n sin(theta).
double coherence(const BlochState& s);

// One balance arm: `count` identical noninteracting qubits prepared in
// `qubit` (product state).
struct ArmState {
  ArmState(const BlochState& qubit, int count);

  BlochState qubit;
  int count;
};

}  // namespace wepsim
