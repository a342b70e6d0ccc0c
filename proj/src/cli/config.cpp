#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace wepsim::cli {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Ordered key/value store with consumption tracking, so unknown keys can be
// reported after a mode has claimed everything it understands.
class KeyValues {
 public:
  explicit KeyValues(const std::string& text) {
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#' || t[0] == ';') continue;
      if (t.front() == '[') {
        if (t.back() != ']') {
          throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
        }
        section = trim(t.substr(1, t.size() - 2));
        if (section.empty()) {
          throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
        }
        continue;
      }
      const auto eq = t.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("line " + std::to_string(lineno) + ": expected key = value, got '" +
                          t + "'");
      }
      const std::string key = trim(t.substr(0, eq));
      const std::string value = trim(t.substr(eq + 1));
      if (key.empty()) {
        throw ConfigError("line " + std::to_string(lineno) + ": empty key");
      }
      const std::string full = section.empty() ? key : section + "." + key;
      if (!values_.emplace(full, value).second) {
        throw ConfigError("duplicate key '" + full + "'");
      }
      order_.push_back(full);
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get_string(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      throw ConfigError("missing required key '" + key + "'");
    }
    consumed_.insert(key);
    return it->second;
  }

  double get_double(const std::string& key) { return parse_double(key, get_string(key)); }

  double get_double_or(const std::string& key, double fallback) {
    return has(key) ? get_double(key) : fallback;
  }

  // Angle keys live in degrees in the file; radians everywhere else.
  double get_angle(const std::string& key_deg) { return kDegToRad * get_double(key_deg); }
  double get_angle_or(const std::string& key_deg, double fallback_rad) {
    return has(key_deg) ? get_angle(key_deg) : fallback_rad;
  }

  long long get_int(const std::string& key) {
    const std::string v = get_string(key);
    char* end = nullptr;
    const long long out = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') {
      throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    }
    return out;
  }

  long long get_int_or(const std::string& key, long long fallback) {
    return has(key) ? get_int(key) : fallback;
  }

  bool get_bool_or(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const std::string v = get_string(key);
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
  }

  std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const std::string v = get_string(key);
    char* end = nullptr;
    const unsigned long long out = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') {
      throw ConfigError("key '" + key + "': expected an unsigned integer, got '" + v + "'");
    }
    return out;
  }

  void ensure_all_consumed() const {
    for (const auto& key : order_) {
      if (!consumed_.count(key)) {
        throw ConfigError("unknown key '" + key + "'");
      }
    }
  }

 private:
  double parse_double(const std::string& key, const std::string& v) const {
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') {
      throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
    return out;
  }

  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
  std::vector<std::string> order_;
};

// Re-throws domain invariant violations as config errors that name the
// offending section.
template <typename F>
auto domain(const std::string& section, F&& build) {
  try {
    return build();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("section [" + section + "]: " + e.what());
  }
}

WepParams read_wep_params(KeyValues& kv) {
  const double r1 = kv.get_double("wep_params.r1");
  const double r2 = kv.get_double("wep_params.r2");
  const double r_abs = kv.get_double("wep_params.r_abs");
  const double phi_r = kv.get_angle_or("wep_params.phi_r_deg", 0.0);
  return domain("wep_params", [&] { return WepParams(r1, r2, r_abs, phi_r); });
}

BlochState read_state(KeyValues& kv, const std::string& section) {
  const double n = kv.get_double(section + ".n");
  const double theta = kv.get_angle(section + ".theta_deg");
  const double phi = kv.get_angle_or(section + ".phi_deg", 0.0);
  return domain(section, [&] { return BlochState(n, theta, phi); });
}

ArmState read_arm(KeyValues& kv, const std::string& section) {
  const BlochState qubit = read_state(kv, section);
  const long long count = kv.get_int(section + ".count");
  return domain(section, [&] { return ArmState(qubit, static_cast<int>(count)); });
}

EotvosGeometry read_geometry(KeyValues& kv) {
  return domain("geometry", [&] {
    EotvosGeometry geo = EotvosGeometry::at_latitude(kv.get_angle("geometry.latitude_deg"));
    geo.axial_tilt = kv.get_angle_or("geometry.axial_tilt_deg", geo.axial_tilt);
    geo.spin_rate = kv.get_double_or("geometry.spin_rate", geo.spin_rate);
    geo.earth_radius = kv.get_double_or("geometry.earth_radius", geo.earth_radius);
    geo.sun_distance = kv.get_double_or("geometry.sun_distance", geo.sun_distance);
    geo.g_surface = kv.get_double_or("geometry.g_surface", geo.g_surface);
    geo.newton_g = kv.get_double_or("geometry.newton_g", geo.newton_g);
    geo.sun_mass = kv.get_double_or("geometry.sun_mass", geo.sun_mass);
    geo.orbital_phase = kv.get_angle_or("geometry.orbital_phase_deg", 0.0);
    // Default stays self-consistent with whatever G, M and R were chosen.
    const double circular = std::sqrt(geo.newton_g * geo.sun_mass /
                                      (geo.sun_distance * geo.sun_distance * geo.sun_distance));
    geo.orbit_rate = kv.get_double_or("geometry.orbit_rate", circular);
    return geo;
  });
}

TimeGrid read_time(KeyValues& kv) {
  TimeGrid grid;
  grid.start = kv.get_double_or("time.start", 0.0);
  grid.end = kv.get_double("time.end");
  grid.steps = static_cast<int>(kv.get_int("time.steps"));
  if (grid.steps < 1) {
    throw ConfigError("key 'time.steps': must be >= 1");
  }
  if (grid.steps > 1 && !(grid.end > grid.start)) {
    throw ConfigError("key 'time.end': must exceed time.start");
  }
  return grid;
}

CavendishConfig read_cavendish(KeyValues& kv) {
  const double m_s = kv.get_double("cavendish.m_s");
  const double r_s = kv.get_double("cavendish.r_s");
  const double r_t = kv.get_double("cavendish.r_t");
  const double omega = kv.get_double("cavendish.omega");
  const double theta = kv.get_angle_or("cavendish.theta_deg", 0.0);
  const double m = kv.get_double("cavendish.m");
  const long long count = kv.get_int("cavendish.count");
  const double newton_g = kv.get_double_or("cavendish.newton_g", 6.6743e-11);
  return domain("cavendish", [&] {
    return CavendishConfig(m_s, r_s, r_t, omega, theta, m, static_cast<int>(count), newton_g);
  });
}

std::vector<double> read_axis(KeyValues& kv, const std::string& base, bool angle) {
  const double lo = angle ? kv.get_angle(base + "_min_deg") : kv.get_double(base + "_min");
  const double hi = angle ? kv.get_angle_or(base + "_max_deg", lo)
                          : kv.get_double_or(base + "_max", lo);
  const long long steps = kv.get_int_or(base + "_steps", 1);
  if (steps < 1) {
    throw ConfigError("key '" + base + "_steps': must be >= 1");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    out.push_back(lo);
    return out;
  }
  for (long long i = 0; i < steps; ++i) {
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1));
  }
  return out;
}

}  // namespace

std::string to_string(Mode m) {
  switch (m) {
    case Mode::freefall: return "freefall";
    case Mode::eotvos: return "eotvos";
    case Mode::cavendish: return "cavendish";
    case Mode::montecarlo: return "montecarlo";
    case Mode::sweep: return "sweep";
  }
  return "unknown";
}

Mode mode_from_string(const std::string& s) {
  if (s == "freefall") return Mode::freefall;
  if (s == "eotvos") return Mode::eotvos;
  if (s == "cavendish") return Mode::cavendish;
  if (s == "montecarlo") return Mode::montecarlo;
  if (s == "sweep") return Mode::sweep;
  throw ConfigError("key 'mode': unknown mode '" + s + "'");
}

double TimeGrid::at(int i) const {
  if (steps == 1) return start;
  return start + (end - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

ScenarioConfig parse_config(const std::string& text) {
  KeyValues kv(text);
  ScenarioConfig out;
  out.raw_text = text;
  out.mode = mode_from_string(kv.get_string("mode"));
  out.seed = kv.get_u64_or("seed", 0);

  switch (out.mode) {
    case Mode::freefall: {
      FreefallConfig ff{read_wep_params(kv), read_state(kv, "state"),
                        kv.get_double_or("freefall.g", 9.80665),
                        static_cast<int>(kv.get_int_or("freefall.phi_steps", 361))};
      if (ff.g <= 0.0) throw ConfigError("key 'freefall.g': must be positive");
      if (ff.phi_steps < 1) throw ConfigError("key 'freefall.phi_steps': must be >= 1");
      out.detail = ff;
      break;
    }
    case Mode::eotvos: {
      EotvosGeometry geo = read_geometry(kv);
      const double ell = kv.get_double("balance.ell");
      const double theta_tilde = kv.get_angle_or("balance.theta_tilde_deg", 0.0);
      const bool auto_tilt = kv.get_bool_or("balance.phi_tilde_auto", false);
      const double phi_tilde =
          auto_tilt ? 0.0 : kv.get_angle_or("balance.phi_tilde_deg", 0.0);
      BalanceGeometry balance =
          domain("balance", [&] { return BalanceGeometry(ell, theta_tilde, phi_tilde); });
      ArmMasses masses = domain("masses", [&] {
        return ArmMasses(kv.get_double("masses.m_a"), kv.get_double("masses.m_b"));
      });
      out.detail = EotvosConfig{geo,    balance, auto_tilt,
                                masses, read_wep_params(kv),
                                read_arm(kv, "state_a"), read_arm(kv, "state_b"),
                                read_time(kv)};
      break;
    }
    case Mode::cavendish: {
      out.detail = CavendishRunConfig{read_cavendish(kv), read_wep_params(kv),
                                      read_state(kv, "state"), read_time(kv)};
      break;
    }
    case Mode::montecarlo: {
      MontecarloConfig mc{kv.get_int_or("montecarlo.count", 100000),
                          static_cast<int>(kv.get_int_or("montecarlo.bins", 50))};
      if (mc.count < 2) throw ConfigError("key 'montecarlo.count': must be >= 2");
      if (mc.bins < 1) throw ConfigError("key 'montecarlo.bins': must be >= 1");
      out.detail = mc;
      break;
    }
    case Mode::sweep: {
      SweepConfig sw{read_cavendish(kv), QsnrGrid{}, 0.0, 0.0};
      sw.t = kv.get_double("sweep.t");
      sw.delta_alpha_cl_rel = kv.get_double("sweep.delta_alpha_cl_rel");
      if (sw.delta_alpha_cl_rel < 0.0) {
        throw ConfigError("key 'sweep.delta_alpha_cl_rel': must be >= 0");
      }
      sw.grid.n = read_axis(kv, "sweep.n", false);
      sw.grid.theta = read_axis(kv, "sweep.theta", true);
      sw.grid.phi = read_axis(kv, "sweep.phi", true);
      sw.grid.r_abs = read_axis(kv, "sweep.r_abs", false);
      sw.grid.phi_r = read_axis(kv, "sweep.phi_r", true);
      for (double n : sw.grid.n) {
        if (n < 0.0 || n > 1.0) {
          throw ConfigError("key 'sweep.n_min/max': n must satisfy 0 <= n <= 1");
        }
      }
      out.detail = sw;
      break;
    }
  }
  kv.ensure_all_consumed();
  return out;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading config file '" + path + "'");
  }
  return parse_config(buf.str());
}

}  // namespace wepsim::cli
