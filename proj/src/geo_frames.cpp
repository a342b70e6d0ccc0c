#include "wepsim/geo_frames.hpp"

#include <algorithm>
#include <stdexcept>

namespace wepsim {

Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (n == 0.0) {
    throw std::invalid_argument("Vec3: cannot normalize the zero vector");
  }
  return (1.0 / n) * *this;
}

namespace {

void check(const EotvosGeometry& g) {
  if (std::abs(g.latitude) > 0.5 * M_PI) {
    throw std::invalid_argument("EotvosGeometry: |latitude| must be <= pi/2");
  }
  if (!(g.earth_radius > 0.0 && g.sun_distance > 0.0 && g.g_surface > 0.0 &&
        g.newton_g > 0.0)) {
    throw std::invalid_argument("EotvosGeometry: radii, g and G must be positive");
  }
  // Zero rates or a zero solar mass are accepted as degenerate limits.
  if (g.spin_rate < 0.0 || g.orbit_rate < 0.0 || g.sun_mass < 0.0) {
    throw std::invalid_argument("EotvosGeometry: rates and masses must be >= 0");
  }
}

// Tilt of the spin axis (about the co-orbiting y axis), then the seasonal
// rotation about the orbital z axis.
Vec3 tilt_and_season(const EotvosGeometry& g, const Vec3& v) {
  const double ce = std::cos(g.axial_tilt), se = std::sin(g.axial_tilt);
  const Vec3 tilted{ce * v.x - se * v.z, v.y, se * v.x + ce * v.z};
  const double cp = std::cos(g.orbital_phase), sp = std::sin(g.orbital_phase);
  return {cp * tilted.x - sp * tilted.y, sp * tilted.x + cp * tilted.y, tilted.z};
}

}  // namespace

EotvosGeometry EotvosGeometry::at_latitude(double latitude_rad) {
  EotvosGeometry g;
  g.latitude = latitude_rad;
  g.orbit_rate = std::sqrt(g.newton_g * g.sun_mass /
                           (g.sun_distance * g.sun_distance * g.sun_distance));
  check(g);
  return g;
}

LabFrame lab_frame(const EotvosGeometry& geo, double t) {
  check(geo);
  const double cl = std::cos(geo.latitude), sl = std::sin(geo.latitude);
  const double cw = std::cos(geo.spin_rate * t), sw = std::sin(geo.spin_rate * t);
  // x south, z radial; y = z cross x points east, keeping the triad
  // right-handed.
  return {
      tilt_and_season(geo, {sl * cw, sl * sw, -cl}),
      tilt_and_season(geo, {-sw, cw, 0.0}),
      tilt_and_season(geo, {cl * cw, cl * sw, sl}),
  };
}

SunPointing sun_pointing(const EotvosGeometry& geo, double t) {
  const LabFrame f = lab_frame(geo, t);
  // d = R_sun x_orbital - R_earth z_lab, projected on the lab axes.
  const Vec3 sun_orbital{geo.sun_distance, 0.0, 0.0};
  const Vec3 d_orbital = sun_orbital - geo.earth_radius * f.z;
  const Vec3 d_lab{d_orbital.dot(f.x), d_orbital.dot(f.y), d_orbital.dot(f.z)};
  const Vec3 sun_lab{sun_orbital.dot(f.x), sun_orbital.dot(f.y), sun_orbital.dot(f.z)};
  return {d_lab, (1.0 / geo.sun_distance) * sun_lab};
}

Vec3 inertial_accel(const EotvosGeometry& geo, double t) {
  check(geo);
  const double cl = std::cos(geo.latitude), sl = std::sin(geo.latitude);
  const double spin = geo.spin_rate * geo.spin_rate * geo.earth_radius * cl;
  const Vec3 spin_term{spin * sl, 0.0, spin * cl};
  const SunPointing sp = sun_pointing(geo, t);
  const double orb = geo.orbit_rate * geo.orbit_rate * geo.sun_distance;
  // Centrifugal of the orbital motion points from the Sun outward.
  return spin_term - orb * sp.sun_hat;
}

Vec3 gravitational_accel(const EotvosGeometry& geo, double t) {
  check(geo);
  const SunPointing sp = sun_pointing(geo, t);
  const double dist = sp.d.norm();
  if (dist == 0.0) {
    throw std::invalid_argument("gravitational_accel: degenerate Sun distance");
  }
  const double pull = geo.newton_g * geo.sun_mass / (dist * dist * dist);
  return pull * sp.d - Vec3{0.0, 0.0, geo.g_surface};
}

BalanceGeometry::BalanceGeometry(double ell, double theta_tilde, double phi_tilde)
    : ell(ell), theta_tilde(theta_tilde), phi_tilde(phi_tilde) {
  if (!(ell > 0.0)) {
    throw std::invalid_argument("BalanceGeometry: ell must be positive");
  }
}

Vec3 arm_vector(const BalanceGeometry& bg) {
  const double cp = std::cos(bg.phi_tilde), sp = std::sin(bg.phi_tilde);
  return {bg.ell * cp * std::cos(bg.theta_tilde), bg.ell * cp * std::sin(bg.theta_tilde),
          bg.ell * sp};
}

double fiber_tilt(const EotvosGeometry& geo, double t) {
  const Vec3 net = inertial_accel(geo, t) + gravitational_accel(geo, t);
  const double n = net.norm();
  if (n == 0.0) {
    throw std::invalid_argument("fiber_tilt: zero net force");
  }
  const double c = std::clamp(-net.z / n, -1.0, 1.0);
  return std::acos(c);
}

}  // namespace wepsim
