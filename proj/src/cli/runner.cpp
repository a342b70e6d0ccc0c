#include "runner.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <array>
#include <cstdio>
#include <memory>
#include <sstream>
#include <thread>

#include "wepsim/ensemble.hpp"
#include "wepsim/noise_sensitivity.hpp"

namespace wepsim::cli {

namespace {

BalanceGeometry balance_at(const EotvosConfig& ec, double t) {
  if (!ec.auto_fiber_tilt) return ec.balance;
  return BalanceGeometry(ec.balance.ell, ec.balance.theta_tilde, fiber_tilt(ec.geo, t));
}

std::vector<double> eotvos_row(const EotvosConfig& ec, double t) {
  const TorqueScenario sc(ec.geo, balance_at(ec, t), ec.masses, ec.params, ec.arm_a, ec.arm_b);
  const double tau0 = torque_prefactor(sc, t);
  const double mu_ell = ec.masses.reduced() * ec.balance.ell;
  return {t,
          tau0 / mu_ell,
          tau0,
          torque_mean(sc, t),
          torque_variance(sc, t),
          phase_averaged_torque_mean(sc, t)};
}

std::vector<double> cavendish_row(const CavendishRunConfig& cc, double t) {
  const FarFieldAccel far = far_field_angular_accel(cc.cavendish, cc.params, cc.state, t);
  return {t,
          classical_angular_accel(cc.cavendish, t),
          angular_accel_mean(cc.cavendish, cc.params, cc.state, t),
          angular_accel_variance(cc.cavendish, cc.params, cc.state, t),
          far.mean,
          far.variance};
}

std::vector<double> freefall_row(const FreefallConfig& ff, double phi) {
  const BlochState s(ff.state.n(), ff.state.theta(), phi);
  return {phi,
          form_factor_mean(ff.params, s),
          form_factor_variance(ff.params, s),
          phase_averaged_mean(ff.params, ff.state.n(), ff.state.theta()),
          phase_averaged_variance(ff.params, ff.state.n(), ff.state.theta())};
}

ResultTable run_freefall(const FreefallConfig& ff) {
  ResultTable table;
  table.name = "form_factors.csv";
  table.columns = {"phi_rad", "form_factor_mean", "form_factor_variance",
                   "phase_averaged_mean", "phase_averaged_variance"};
  for (int i = 0; i < ff.phi_steps; ++i) {
    const double phi =
        -M_PI + 2.0 * M_PI * static_cast<double>(i) / std::max(1, ff.phi_steps);
    table.rows.push_back(freefall_row(ff, phi));
  }
  table.recompute_row = [ff](const std::vector<double>& row) {
    return freefall_row(ff, row[0]);
  };
  return table;
}

// Numerical failures mid-scan are annotated with the offending sample time.
template <typename F>
std::vector<double> guarded_row(F&& make, double t) {
  try {
    return make(t);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string(e.what()) + " (at t = " + format_double(t) + " s)");
  }
}

ResultTable run_eotvos(const EotvosConfig& ec) {
  ResultTable table;
  table.name = "torque_daily.csv";
  table.columns = {"t_s",
                   "tau0_over_mu_ell_m_s2",
                   "tau0_N_m",
                   "torque_mean_N_m",
                   "torque_variance_N2_m2",
                   "phase_averaged_torque_mean_N_m"};
  for (int i = 0; i < ec.time.steps; ++i) {
    table.rows.push_back(guarded_row([&](double t) { return eotvos_row(ec, t); },
                                     ec.time.at(i)));
  }
  table.recompute_row = [ec](const std::vector<double>& row) {
    return eotvos_row(ec, row[0]);
  };
  return table;
}

ResultTable run_cavendish(const CavendishRunConfig& cc) {
  if (!far_field_valid(cc.cavendish)) {
    std::fprintf(stderr,
                 "warning: r_t/r_s = %g is outside the far-field validity window (< 0.2)\n",
                 cc.cavendish.r_t / cc.cavendish.r_s);
  }
  ResultTable table;
  table.name = "angular_acceleration.csv";
  table.columns = {"t_s",
                   "alpha_classical_rad_s2",
                   "alpha_mean_rad_s2",
                   "alpha_variance_rad2_s4",
                   "far_field_mean_rad_s2",
                   "far_field_variance_rad2_s4"};
  for (int i = 0; i < cc.time.steps; ++i) {
    table.rows.push_back(guarded_row([&](double t) { return cavendish_row(cc, t); },
                                     cc.time.at(i)));
  }
  table.recompute_row = [cc](const std::vector<double>& row) {
    return cavendish_row(cc, row[0]);
  };
  return table;
}

std::vector<ResultTable> run_montecarlo(const MontecarloConfig& mc, std::uint64_t seed) {
  // Checkpoints at 1, 3, 10, 30, ... up to the full count.
  std::vector<long long> checkpoints;
  for (long long decade = 10; decade < mc.count; decade *= 10) {
    checkpoints.push_back(decade);
    if (3 * decade < mc.count) checkpoints.push_back(3 * decade);
  }
  checkpoints.push_back(mc.count);

  const auto stats_rows = [mc, seed, checkpoints]() {
    std::vector<std::vector<double>> rows;
    PhaseRng rng(seed);
    RunningStats stats;
    std::size_t next = 0;
    for (long long i = 1; i <= mc.count; ++i) {
      stats.add(std::cos(rng.next_phase()));
      if (next < checkpoints.size() && i == checkpoints[next]) {
        rows.push_back({static_cast<double>(i), stats.mean, stats.standard_error()});
        ++next;
      }
    }
    return rows;
  };

  ResultTable stats;
  stats.name = "cos_phase_stats.csv";
  stats.columns = {"sample_count", "mean", "standard_error"};
  stats.rows = stats_rows();
  stats.recompute_row = [stats_rows](const std::vector<double>& row) {
    for (const auto& candidate : stats_rows()) {
      if (candidate[0] == row[0]) return candidate;
    }
    throw std::runtime_error("verify: no checkpoint at requested sample count");
  };

  // The histogram is re-derivable only from the full stream; cache one rerun.
  auto cached = std::make_shared<std::vector<std::vector<double>>>();
  const auto hist_rows = [mc, seed]() {
    PhaseRng rng(seed);
    const CosPhaseResult res = cos_phase_experiment(rng, mc.count, mc.bins);
    std::vector<std::vector<double>> rows;
    const double width = 2.0 / mc.bins;
    for (int b = 0; b < mc.bins; ++b) {
      rows.push_back({-1.0 + (b + 0.5) * width, static_cast<double>(res.histogram[b])});
    }
    return rows;
  };

  ResultTable hist;
  hist.name = "cos_phase_histogram.csv";
  hist.columns = {"bin_center", "count"};
  hist.rows = hist_rows();
  hist.recompute_row = [hist_rows, cached, mc](const std::vector<double>& row) {
    if (cached->empty()) *cached = hist_rows();
    const double width = 2.0 / mc.bins;
    const int b = static_cast<int>(std::lround((row[0] + 1.0) / width - 0.5));
    if (b < 0 || b >= mc.bins) {
      throw std::runtime_error("verify: histogram bin center out of range");
    }
    return (*cached)[static_cast<std::size_t>(b)];
  };

  return {stats, hist};
}

ResultTable run_sweep(const SweepConfig& sw, int threads) {
  ResultTable table;
  table.name = "qsnr_sweep.csv";
  table.columns = {"n", "theta_rad", "phi_rad", "r_abs", "phi_r_rad", "qsnr"};

  const QsnrGrid& g = sw.grid;
  std::vector<std::array<double, 5>> points;
  points.reserve(g.n.size() * g.theta.size() * g.phi.size() * g.r_abs.size() *
                 g.phi_r.size());
  for (double n : g.n)
    for (double theta : g.theta)
      for (double phi : g.phi)
        for (double r_abs : g.r_abs)
          for (double phi_r : g.phi_r) points.push_back({n, theta, phi, r_abs, phi_r});

  const double delta_abs =
      sw.delta_alpha_cl_rel * std::abs(classical_angular_accel(sw.cavendish, sw.t));
  const auto eval = [&sw, delta_abs](const std::array<double, 5>& pt) {
    const WepParams p(1.0, 1.0, pt[3], pt[4]);
    const BlochState s(pt[0], pt[1], pt[2]);
    return std::vector<double>{pt[0], pt[1],  pt[2],
                               pt[3], p.phi_r(),
                               qsnr(sw.cavendish, p, s, sw.t, delta_abs)};
  };

  table.rows.assign(points.size(), {});
  const int workers = std::max(1, threads);
  if (workers == 1 || points.size() < 2) {
    for (std::size_t i = 0; i < points.size(); ++i) table.rows[i] = eval(points[i]);
  } else {
    // Index-sharded evaluation; output order is fixed by the row index.
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = static_cast<std::size_t>(w); i < points.size();
             i += static_cast<std::size_t>(workers)) {
          table.rows[i] = eval(points[i]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  const CavendishConfig cfg = sw.cavendish;
  const double t = sw.t;
  table.recompute_row = [cfg, t, delta_abs](const std::vector<double>& row) {
    const WepParams p(1.0, 1.0, row[3], row[4]);
    const BlochState s(row[0], row[1], row[2]);
    return std::vector<double>{row[0], row[1], row[2], row[3], p.phi_r(),
                               qsnr(cfg, p, s, t, delta_abs)};
  };
  return table;
}

}  // namespace

RunOutput run(const ScenarioConfig& cfg, std::uint64_t seed, int threads) {
  RunOutput out;
  switch (cfg.mode) {
    case Mode::freefall:
      out.tables.push_back(run_freefall(std::get<FreefallConfig>(cfg.detail)));
      break;
    case Mode::eotvos:
      out.tables.push_back(run_eotvos(std::get<EotvosConfig>(cfg.detail)));
      break;
    case Mode::cavendish:
      out.tables.push_back(run_cavendish(std::get<CavendishRunConfig>(cfg.detail)));
      break;
    case Mode::montecarlo:
      out.tables = run_montecarlo(std::get<MontecarloConfig>(cfg.detail), seed);
      break;
    case Mode::sweep:
      out.tables.push_back(run_sweep(std::get<SweepConfig>(cfg.detail), threads));
      break;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a_hash(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

std::string hash_string(const ScenarioConfig& cfg) {
  std::ostringstream s;
  s << std::hex << fnv1a_hash(cfg.raw_text);
  return s.str();
}

}  // namespace

void write_outputs(const RunOutput& out, const ScenarioConfig& cfg, std::uint64_t seed,
                   const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
  }

  const std::string hash = hash_string(cfg);
  for (const ResultTable& table : out.tables) {
    const fs::path path = fs::path(out_dir) / table.name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
    f << "# tool=wep-torsim version=" << kToolVersion << "\n";
    f << "# mode=" << to_string(cfg.mode) << "\n";
    f << "# config_hash=" << hash << "\n";
    f << "# seed=" << seed << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      f << (c ? "," : "") << table.columns[c];
    }
    f << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        f << (c ? "," : "") << format_double(row[c]);
      }
      f << "\n";
    }
    if (!f) throw IoError("failed writing '" + path.string() + "'");
  }

  const fs::path manifest = fs::path(out_dir) / "manifest";
  std::ofstream m(manifest, std::ios::binary);
  if (!m) throw IoError("cannot open '" + manifest.string() + "' for writing");
  m << "tool = wep-torsim\n";
  m << "version = " << kToolVersion << "\n";
  m << "mode = " << to_string(cfg.mode) << "\n";
  m << "config_hash = " << hash << "\n";
  m << "seed = " << seed << "\n";
  for (const ResultTable& table : out.tables) {
    m << "table = " << table.name << " rows=" << table.rows.size()
      << " columns=" << table.columns.size() << "\n";
  }
  if (!m) throw IoError("failed writing manifest");
}

int verify_outputs(const RunOutput& out) {
  int mismatches = 0;
  for (const ResultTable& table : out.tables) {
    if (!table.recompute_row) continue;
    for (std::size_t i = 0; i < table.rows.size(); i += 100) {
      const std::vector<double> again = table.recompute_row(table.rows[i]);
      if (again.size() != table.rows[i].size()) {
        ++mismatches;
        continue;
      }
      for (std::size_t c = 0; c < again.size(); ++c) {
        if (format_double(again[c]) != format_double(table.rows[i][c])) ++mismatches;
      }
    }
  }
  return mismatches;
}

}  // namespace wepsim::cli
