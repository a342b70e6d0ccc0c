#include "wepsim/linalg2.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wepsim {

namespace {

bool finite(double x) { return std::isfinite(x); }
bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

HermitianOp2::HermitianOp2(double a11, double a22, Complex a12)
    : a11_(a11), a22_(a22), a12_(a12) {
  if (!finite(a11) || !finite(a22) || !finite(a12)) {
    throw std::invalid_argument("HermitianOp2: entries must be finite");
  }
}

std::array<double, 2> HermitianOp2::eigenvalues() const {
  const double mean = 0.5 * (a11_ + a22_);
  const double half_gap = 0.5 * (a11_ - a22_);
  const double radius = std::hypot(half_gap, std::abs(a12_));
  return {mean - radius, mean + radius};
}

HermitianOp2 operator+(const HermitianOp2& a, const HermitianOp2& b) {
  return {a.a11() + b.a11(), a.a22() + b.a22(), a.a12() + b.a12()};
}

HermitianOp2 operator-(const HermitianOp2& a, const HermitianOp2& b) {
  return {a.a11() - b.a11(), a.a22() - b.a22(), a.a12() - b.a12()};
}

HermitianOp2 operator*(double s, const HermitianOp2& a) {
  return {s * a.a11(), s * a.a22(), s * a.a12()};
}

Mat2 operator*(const HermitianOp2& a, const HermitianOp2& b) {
  return a.to_mat() * b.to_mat();
}

DensityMatrix2::DensityMatrix2(const HermitianOp2& rho) : rho_(rho) {
  if (std::abs(rho.trace() - 1.0) > kAlgebraTol) {
    throw std::invalid_argument("DensityMatrix2: trace must be 1 within 1e-12, got " +
                                std::to_string(rho.trace()));
  }
  const auto ev = rho.eigenvalues();
  if (ev[0] < -kAlgebraTol) {
    throw std::invalid_argument("DensityMatrix2: not positive semidefinite, min eigenvalue " +
                                std::to_string(ev[0]));
  }
}

namespace {

// Trace of the full complex product, checked for a real result.
double real_trace(const Mat2& m, const char* what) {
  const Complex t = m.trace();
  const double scale = std::max(1.0, std::abs(t.real()));
  if (std::abs(t.imag()) > kAlgebraTol * scale) {
    throw std::runtime_error(std::string(what) + ": non-real trace residual");
  }
  return t.real();
}

}  // namespace

double expectation(const HermitianOp2& op, const DensityMatrix2& rho) {
  return real_trace(rho.op().to_mat() * op.to_mat(), "expectation");
}

double variance(const HermitianOp2& op, const DensityMatrix2& rho) {
  const double mean = expectation(op, rho);
  const double mean_sq = real_trace(rho.op().to_mat() * (op.to_mat() * op.to_mat()), "variance");
  double var = mean_sq - mean * mean;
  const double scale = std::max(1.0, mean_sq);
  if (var < 0.0) {
    if (var < -kVarianceClamp * scale) {
      throw std::runtime_error("variance: negative beyond clamp window");
    }
    var = 0.0;
  }
  return var;
}

}  // namespace wepsim
