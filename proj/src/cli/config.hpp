#pragma once

// Scenario configuration: a flat, typed key=value text format with [section]
// headers, one scenario per file.  All values are SI except angles, which are
// configured in degrees through keys suffixed _deg and converted at this
// boundary.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "wepsim/cavendish.hpp"
#include "wepsim/eotvos_torque.hpp"
#include "wepsim/geo_frames.hpp"
#include "wepsim/quantum_state.hpp"
#include "wepsim/wep_core.hpp"

namespace wepsim::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { freefall, eotvos, cavendish, montecarlo, sweep };

std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

struct TimeGrid {
  double start = 0.0;
  double end = 0.0;
  int steps = 1;  // number of samples, inclusive of both ends when steps > 1

  double at(int i) const;
};

struct FreefallConfig {
  WepParams params;
  BlochState state;
  double g;
  int phi_steps;
};

struct EotvosConfig {
  EotvosGeometry geo;
  BalanceGeometry balance;
  bool auto_fiber_tilt;
  ArmMasses masses;
  WepParams params;
  ArmState arm_a, arm_b;
  TimeGrid time;
};

struct CavendishRunConfig {
  CavendishConfig cavendish;
  WepParams params;
  BlochState state;
  TimeGrid time;
};

struct MontecarloConfig {
  long long count;
  int bins;
};

struct SweepConfig {
  CavendishConfig cavendish;
  QsnrGrid grid;
  double t;
  double delta_alpha_cl_rel;
};

struct ScenarioConfig {
  Mode mode = Mode::freefall;
  std::uint64_t seed = 0;
  std::variant<std::monostate, FreefallConfig, EotvosConfig, CavendishRunConfig,
               MontecarloConfig, SweepConfig>
      detail;
  std::string raw_text;  // exact file bytes, hashed into output metadata
};

// Parses and validates a scenario file.  Throws ConfigError on malformed
// input, duplicate or unknown keys, or any domain invariant violation (the
// message names the offending key and constraint); IoError when the file
// cannot be read.
ScenarioConfig load_config(const std::string& path);

// Same, from in-memory text (used by tests).
ScenarioConfig parse_config(const std::string& text);

}  // namespace wepsim::cli
