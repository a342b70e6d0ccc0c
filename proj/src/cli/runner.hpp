#pragma once

// Scenario execution and CSV emission.  Output is deterministic: fixed
// (config, seed, version) produce byte-identical files, with doubles printed
// in their shortest round-trip decimal form.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "config.hpp"

namespace wepsim::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct ResultTable {
  std::string name;  // output file name
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  // Rebuilds a row from its input columns; used by --verify on a 1% sample.
  std::function<std::vector<double>(const std::vector<double>&)> recompute_row;
};

struct RunOutput {
  std::vector<ResultTable> tables;
};

// Executes the scenario.  threads only affects wall time of sweep grids,
// never results.  Numerical failures surface as std::runtime_error with the
// offending inputs in the message.
RunOutput run(const ScenarioConfig& cfg, std::uint64_t seed, int threads);

// Writes one CSV per table plus a manifest into out_dir (created if needed).
void write_outputs(const RunOutput& out, const ScenarioConfig& cfg, std::uint64_t seed,
                   const std::string& out_dir);

// Recomputes every 100th row of each table; returns the number of mismatched
// cells (0 = verified).
int verify_outputs(const RunOutput& out);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

std::uint64_t fnv1a_hash(const std::string& bytes);

}  // namespace wepsim::cli
