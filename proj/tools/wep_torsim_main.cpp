// wep-torsim: torsion-balance simulations for quantum tests of free fall.
//
// Usage: wep-torsim <mode> --config <path> --out <dir> [--seed <u64>]
//                   [--threads <k>] [--verify]
//
// Exit codes: 0 success, 2 config error, 3 numerical error, 4 I/O error.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "../src/cli/config.hpp"
#include "../src/cli/runner.hpp"

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 1;
  bool verify = false;
  std::string mode;
};

int run_scenario(const Options& opt) {
  using namespace wepsim::cli;

  ScenarioConfig cfg;
  try {
    cfg = load_config(opt.config_path);
    if (to_string(cfg.mode) != opt.mode) {
      std::cerr << "config error: config declares mode '" << to_string(cfg.mode)
                << "' but the '" << opt.mode << "' subcommand was invoked\n";
      return 2;
    }
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  const std::uint64_t seed = opt.seed_given ? opt.seed : cfg.seed;

  // The environment may redirect output, e.g. on batch systems.
  std::string out_dir = opt.out_dir;
  if (const char* env = std::getenv("WEP_TORSIM_OUT")) {
    out_dir = env;
  }
  if (out_dir.empty()) {
    std::cerr << "config error: no output directory (--out or WEP_TORSIM_OUT)\n";
    return 2;
  }

  RunOutput output;
  try {
    output = run(cfg, seed, opt.threads);
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }

  if (opt.verify) {
    const int mismatches = verify_outputs(output);
    if (mismatches != 0) {
      std::cerr << "numerical error: verification found " << mismatches
                << " mismatched cells\n";
      return 3;
    }
  }

  try {
    write_outputs(output, cfg, seed, out_dir);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torsion-balance simulations for quantum tests of free fall"};
  app.require_subcommand(1);

  Options opt;
  for (const std::string mode : {"freefall", "eotvos", "cavendish", "montecarlo", "sweep"}) {
    CLI::App* sub = app.add_subcommand(mode, mode + " scenario");
    sub->add_option("--config", opt.config_path, "scenario file")->required();
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--seed", opt.seed, "random seed override")
        ->each([&opt](const std::string&) { opt.seed_given = true; });
    sub->add_option("--threads", opt.threads, "worker threads for sweep grids")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--verify", opt.verify, "recompute a 1% row sample before writing");
    sub->callback([&opt, mode] { opt.mode = mode; });
  }

  CLI11_PARSE(app, argc, argv);
  return run_scenario(opt);
}
