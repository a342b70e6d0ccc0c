#pragma once

// Earth-Sun geometry for the static torsion-balance configuration: the
// rotating lab frame expressed in a co-orbiting Earth-centered frame, the
// balance-to-Sun vector, and the acceleration vectors multiplying inertial
// and gravitational mass in the net force on a suspended body.
//
// Conventions.  The lab frame has z opposite the local Earth gravitational
// field and x pointing due south.  The co-orbiting frame keeps the Sun on its
// +x axis; `orbital_phase` rotates the spin axis azimuth relative to that
// direction (0 = northern winter solstice, where the axis tilts directly away
// from the Sun).  All units SI, angles in radians, time in seconds measured
// from lab midnight alignment.

#include <cmath>

namespace wepsim {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const;
};

Vec3 operator*(double s, const Vec3& v);

struct EotvosGeometry {
  double latitude = 0.0;                  // rad, |latitude| <= pi/2
  double axial_tilt = 0.4084070449666731; // rad, 23.4 deg
  double spin_rate = 7.2921159e-5;        // rad/s, sidereal day
  double orbit_rate = 1.9912435e-7;       // rad/s, sqrt(G M_sun / R^3) circular orbit
  double earth_radius = 6.371e6;          // m
  double sun_distance = 1.495978707e11;   // m, 1 au
  double g_surface = 9.80665;             // m/s^2
  double newton_g = 6.6743e-11;           // m^3 kg^-1 s^-2
  double sun_mass = 1.98892e30;           // kg
  double orbital_phase = 0.0;             // rad, season relative to solstice

  static EotvosGeometry at_latitude(double latitude_rad);
};

struct LabFrame {
  Vec3 x, y, z;  // lab unit vectors, co-orbiting frame components
};

// Lab unit vectors at time t.  Orthonormal and right-handed for all inputs.
LabFrame lab_frame(const EotvosGeometry& geo, double t);

struct SunPointing {
  Vec3 d;        // balance -> Sun, lab components (m)
  Vec3 sun_hat;  // Earth center -> Sun direction, lab components
};

SunPointing sun_pointing(const EotvosGeometry& geo, double t);

// beta(t): acceleration multiplying the inertial mass, lab components.
// Spin centrifugal term plus the orbital centrifugal term; the latter points
// away from the Sun so that it balances the solar gravitational pull at the
// Earth's center (circular orbit).
Vec3 inertial_accel(const EotvosGeometry& geo, double t);

// gamma(t): acceleration multiplying the gravitational mass, lab components:
// solar field at the balance minus g_surface along z.
Vec3 gravitational_accel(const EotvosGeometry& geo, double t);

// Balance rod geometry: length ell = |r_AB|, azimuth theta_tilde from the lab
// x axis, tilt phi_tilde of the rod out of the horizontal plane.
struct BalanceGeometry {
  BalanceGeometry(double ell, double theta_tilde, double phi_tilde);

  double ell, theta_tilde, phi_tilde;
};

// r_AB = ell (cos(phi~) cos(theta~), cos(phi~) sin(theta~), sin(phi~)).
Vec3 arm_vector(const BalanceGeometry& bg);

// Equilibrium fiber tilt from vertical, cos(phi~) = T_hat . z_hat with
// T = -(F_A + F_B) evaluated for classical equal masses.
double fiber_tilt(const EotvosGeometry& geo, double t);

}  // namespace wepsim
