#pragma once

// Deterministic phase-randomization machinery: a platform-independent RNG,
// uniform phase sampling on [-pi, pi), a streaming moment accumulator, and
// the cos(gamma) ensemble experiment.

#include <cstdint>
#include <string>
#include <vector>

namespace wepsim {

// The one supported generator.  Fixing the algorithm by name keeps sampled
// streams reproducible across machines and versions.
inline constexpr const char* kRngAlgorithmId = "xoshiro256ss-v1";

struct RngSpec {
  std::string algorithm_id = kRngAlgorithmId;
  std::uint64_t seed = 0;
};

// xoshiro256** seeded through splitmix64.  Identical (algorithm_id, seed)
// yields an identical stream on every platform.
class PhaseRng {
 public:
  explicit PhaseRng(std::uint64_t seed);
  explicit PhaseRng(const RngSpec& spec);

  std::uint64_t next_u64();
  double next_unit();   // [0, 1), 53-bit resolution
  double next_phase();  // [-pi, pi)

  // Independent worker stream k, derived as
  // seed_k = splitmix64(seed ^ (k+1) * 0xd1b54a32d192ed03).
  PhaseRng substream(std::uint64_t worker) const;

 private:
  std::uint64_t state_[4];
  std::uint64_t seed_;
};

// Single-pass mean/variance accumulator (Welford update) with exact pairwise
// merging, so parallel shards reduce to the same result as one serial pass.
struct RunningStats {
  long long count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations from the running mean

  void add(double x);
  double variance() const;        // sample variance, count >= 2
  double standard_error() const;  // of the mean
  static RunningStats merged(const RunningStats& a, const RunningStats& b);
};

std::vector<double> sample_uniform_phase(PhaseRng& rng, long long count);

struct CosPhaseResult {
  double mean = 0.0;
  double standard_error = 0.0;
  std::vector<long long> histogram;  // of cos(gamma), `bins` cells over [-1, 1]
};

CosPhaseResult cos_phase_experiment(PhaseRng& rng, long long count, int bins = 50);

// Running statistics of f over `count` phases drawn uniformly on [-pi, pi).
template <typename F>
RunningStats ensemble_average(F&& f, PhaseRng& rng, long long count) {
  RunningStats stats;
  for (long long i = 0; i < count; ++i) {
    stats.add(f(rng.next_phase()));
  }
  return stats;
}

}  // namespace wepsim
