#include "wepsim/cavendish.hpp"

#include <cmath>
#include <stdexcept>

namespace wepsim {

namespace {

constexpr double kCoincidenceTol = 1e-300;
constexpr double kUnityTol = 1e-12;

// Shared amplitude G m_s (R_s/R_t) (1/R_+^3 - 1/R_-^3).
double radial_amplitude(const CavendishConfig& cfg, double t) {
  const SourceDistances d = source_distances(cfg, t);
  const double inv_plus = 1.0 / (d.r_plus * d.r_plus * d.r_plus);
  const double inv_minus = 1.0 / (d.r_minus * d.r_minus * d.r_minus);
  return cfg.newton_g * cfg.m_s * (cfg.r_s / cfg.r_t) * (inv_plus - inv_minus);
}

double signal_phase(const CavendishConfig& cfg, double t) {
  return std::sin(cfg.theta_offset - cfg.omega * t);
}

}  // namespace

CavendishConfig::CavendishConfig(double m_s, double r_s, double r_t, double omega,
                                 double theta_offset, double m, int count, double newton_g)
    : m_s(m_s),
      r_s(r_s),
      r_t(r_t),
      omega(omega),
      theta_offset(theta_offset),
      m(m),
      count(count),
      newton_g(newton_g) {
  if (!(m_s > 0.0 && r_s > 0.0 && r_t > 0.0 && m > 0.0 && newton_g > 0.0)) {
    throw std::invalid_argument("CavendishConfig: masses and lengths must be positive");
  }
  if (r_t == r_s) {
    throw std::invalid_argument("CavendishConfig: r_t must differ from r_s");
  }
  if (count < 1) {
    throw std::invalid_argument("CavendishConfig: count must be >= 1");
  }
}

SourceDistances source_distances(const CavendishConfig& cfg, double t) {
  const double c = std::cos(cfg.omega * t - cfg.theta_offset);
  const double sum_sq = cfg.r_t * cfg.r_t + cfg.r_s * cfg.r_s;
  const double mix = 2.0 * cfg.r_t * cfg.r_s * c;
  const SourceDistances d{std::sqrt(sum_sq + mix), std::sqrt(sum_sq - mix)};
  if (d.r_plus < kCoincidenceTol || d.r_minus < kCoincidenceTol) {
    throw std::invalid_argument("source_distances: test mass coincides with a source");
  }
  return d;
}

FieldPair g_fields(const CavendishConfig& cfg, double t) {
  const Vec3 test{cfg.r_t * std::cos(cfg.theta_offset), cfg.r_t * std::sin(cfg.theta_offset),
                  0.0};
  const Vec3 source{cfg.r_s * std::cos(cfg.omega * t), cfg.r_s * std::sin(cfg.omega * t), 0.0};
  const auto field_at = [&](const Vec3& pos) {
    Vec3 g{};
    for (const Vec3& src : {source, -source}) {
      const Vec3 sep = src - pos;
      const double dist = sep.norm();
      if (dist < kCoincidenceTol) {
        throw std::invalid_argument("g_fields: test mass coincides with a source");
      }
      g = g + (cfg.newton_g * cfg.m_s / (dist * dist * dist)) * sep;
    }
    return g;
  };
  return {field_at(test), field_at(-test)};
}

double classical_angular_accel(const CavendishConfig& cfg, double t) {
  return cfg.count * radial_amplitude(cfg, t) * signal_phase(cfg, t);
}

double angular_accel_mean(const CavendishConfig& cfg, const WepParams& p,
                          const BlochState& s, double t) {
  return classical_angular_accel(cfg, t) * form_factor_mean(p, s);
}

double angular_accel_variance(const CavendishConfig& cfg, const WepParams& p,
                              const BlochState& s, double t) {
  const double amp = radial_amplitude(cfg, t) * signal_phase(cfg, t);
  return cfg.count * amp * amp * form_factor_variance(p, s);
}

FarFieldAccel far_field_angular_accel(const CavendishConfig& cfg, const WepParams& p,
                                      const BlochState& s, double t) {
  const double doubled = std::sin(2.0 * (cfg.omega * t - cfg.theta_offset));
  const double amp = 3.0 * cfg.count * cfg.newton_g * cfg.m_s /
                     (cfg.r_s * cfg.r_s * cfg.r_s);
  return {amp * doubled * form_factor_mean(p, s),
          amp * amp / cfg.count * doubled * doubled * form_factor_variance(p, s)};
}

bool far_field_valid(const CavendishConfig& cfg) { return cfg.r_t / cfg.r_s < 0.2; }

double qsnr(const CavendishConfig& cfg, const WepParams& p, const BlochState& s, double t,
            double delta_alpha_cl) {
  if (std::abs(p.r1() - 1.0) > kUnityTol || std::abs(p.r2() - 1.0) > kUnityTol) {
    throw std::invalid_argument("qsnr: requires r1 = r2 = 1");
  }
  if (delta_alpha_cl < 0.0) {
    throw std::invalid_argument("qsnr: delta_alpha_cl must be >= 0");
  }
  const double alpha_cl = classical_angular_accel(cfg, t);
  const double mean_shift = std::abs(angular_accel_mean(cfg, p, s, t) - alpha_cl);
  const double total_var =
      angular_accel_variance(cfg, p, s, t) + delta_alpha_cl * delta_alpha_cl;
  if (total_var < 1e-300) {
    return mean_shift > 0.0 ? kQsnrCap : 0.0;
  }
  const double value = mean_shift / std::sqrt(total_var);

  // Cross-check against the explicit closed form, available off the sin nodes.
  if (alpha_cl != 0.0) {
    const double proj = std::cos(p.phi_r() + s.phi()) * std::sin(s.theta());
    const double numer = s.n() * p.r_abs() * std::abs(proj);
    const double rel = delta_alpha_cl / alpha_cl;
    const double inner = p.r_abs() * p.r_abs() / cfg.count *
                             (1.0 - s.n() * s.n() * proj * proj) +
                         rel * rel;
    const double direct = numer / std::sqrt(inner);
    if (std::abs(direct - value) > 1e-10 * std::max(1.0, value)) {
      throw std::logic_error("qsnr: algebraic routes disagree");
    }
  }
  return value;
}

std::vector<QsnrRow> qsnr_sweep(const CavendishConfig& cfg, const QsnrGrid& grid, double t,
                                double delta_alpha_cl_rel) {
  if (delta_alpha_cl_rel < 0.0) {
    throw std::invalid_argument("qsnr_sweep: relative uncertainty must be >= 0");
  }
  const double delta_abs = delta_alpha_cl_rel * std::abs(classical_angular_accel(cfg, t));
  std::vector<QsnrRow> rows;
  rows.reserve(grid.n.size() * grid.theta.size() * grid.phi.size() * grid.r_abs.size() *
               grid.phi_r.size());
  for (double n : grid.n) {
    for (double theta : grid.theta) {
      for (double phi : grid.phi) {
        for (double r_abs : grid.r_abs) {
          for (double phi_r : grid.phi_r) {
            const WepParams p(1.0, 1.0, r_abs, phi_r);
            const BlochState s(n, theta, phi);
            rows.push_back({n, theta, phi, r_abs, p.phi_r(), qsnr(cfg, p, s, t, delta_abs)});
          }
        }
      }
    }
  }
  return rows;
}

}  // namespace wepsim
