#pragma once

// Exact 2x2 complex Hermitian operator algebra.
//
// All quantities are SI (operators that represent accelerations carry m/s^2,
// torques N*m, and so on); this module itself is unit-agnostic.  Values are
// immutable after construction and every function is pure, so unrestricted
// concurrent use is safe.

#include <array>
#include <complex>

namespace wepsim {

using Complex = std::complex<double>;

// Tolerances used across the closed-form algebra.  Algebraic identities are
// held to kAlgebraTol absolute; cross-checks against independent oracles to
// kOracleRelTol relative.  Variances may dip below zero by at most
// kVarianceClamp before being treated as an error instead of clamped.
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kOracleRelTol = 1e-10;
inline constexpr double kVarianceClamp = 1e-12;

// General 2x2 complex matrix.  Products of Hermitian operators land here.
struct Mat2 {
  Complex m00, m01, m10, m11;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Complex trace() const { return m00 + m11; }

  Mat2 operator+(const Mat2& o) const {
    return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
  }
  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
};

// Hermitian 2x2 operator.  Hermiticity is structural: only the two real
// diagonal entries and the upper off-diagonal are stored, the lower one is
// always the conjugate.  Constructors reject non-finite entries.
class HermitianOp2 {
 public:
  HermitianOp2(double a11, double a22, Complex a12);

  double a11() const { return a11_; }
  double a22() const { return a22_; }
  Complex a12() const { return a12_; }
  Complex a21() const { return std::conj(a12_); }

  double trace() const { return a11_ + a22_; }

  // Eigenvalues in ascending order (always real).
  std::array<double, 2> eigenvalues() const;

  Mat2 to_mat() const { return {Complex(a11_), a12_, std::conj(a12_), Complex(a22_)}; }

  static HermitianOp2 identity() { return {1.0, 1.0, 0.0}; }
  static HermitianOp2 zero() { return {0.0, 0.0, 0.0}; }
  static HermitianOp2 pauli_x() { return {0.0, 0.0, 1.0}; }
  static HermitianOp2 pauli_y() { return {0.0, 0.0, Complex(0.0, -1.0)}; }
  static HermitianOp2 pauli_z() { return {1.0, -1.0, 0.0}; }

 private:
  double a11_, a22_;
  Complex a12_;
};

HermitianOp2 operator+(const HermitianOp2& a, const HermitianOp2& b);
HermitianOp2 operator-(const HermitianOp2& a, const HermitianOp2& b);
HermitianOp2 operator*(double s, const HermitianOp2& a);

// General matrix product; the result of two Hermitian factors need not be
// Hermitian.
Mat2 operator*(const HermitianOp2& a, const HermitianOp2& b);

// Qubit density matrix: unit trace and positive semidefinite, both verified
// at construction (trace to 1e-12, eigenvalues >= -1e-12).
class DensityMatrix2 {
 public:
  explicit DensityMatrix2(const HermitianOp2& rho);

  const HermitianOp2& op() const { return rho_; }

 private:
  HermitianOp2 rho_;
};

// tr(rho * op).  The trace is computed on the full complex product; any
// imaginary residual above kAlgebraTol (relative to the result) is an error,
// below that it is discarded.
double expectation(const HermitianOp2& op, const DensityMatrix2& rho);

// <op^2> - <op>^2, clamped to zero when within kVarianceClamp below zero.
// Larger violations throw.
double variance(const HermitianOp2& op, const DensityMatrix2& rho);

}  // namespace wepsim
