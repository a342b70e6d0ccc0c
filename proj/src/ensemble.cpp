#include "wepsim/ensemble.hpp"

#include <cmath>
#include <stdexcept>

namespace wepsim {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

PhaseRng::PhaseRng(std::uint64_t seed) : seed_(seed) {
  std::uint64_t sm = seed;
  for (auto& s : state_) s = splitmix64(sm);
}

PhaseRng::PhaseRng(const RngSpec& spec) : PhaseRng(spec.seed) {
  if (spec.algorithm_id != kRngAlgorithmId) {
    throw std::invalid_argument("PhaseRng: unknown algorithm_id '" + spec.algorithm_id + "'");
  }
}

std::uint64_t PhaseRng::next_u64() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double PhaseRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double PhaseRng::next_phase() { return -M_PI + 2.0 * M_PI * next_unit(); }

PhaseRng PhaseRng::substream(std::uint64_t worker) const {
  std::uint64_t mix = seed_ ^ ((worker + 1) * 0xd1b54a32d192ed03ULL);
  return PhaseRng(splitmix64(mix));
}

void RunningStats::add(double x) {
  ++count;
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

double RunningStats::variance() const {
  if (count < 2) {
    throw std::logic_error("RunningStats: variance needs count >= 2");
  }
  return m2 / static_cast<double>(count - 1);
}

double RunningStats::standard_error() const {
  return std::sqrt(variance() / static_cast<double>(count));
}

RunningStats RunningStats::merged(const RunningStats& a, const RunningStats& b) {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  RunningStats out;
  out.count = a.count + b.count;
  const double delta = b.mean - a.mean;
  const double nb = static_cast<double>(b.count), na = static_cast<double>(a.count);
  out.mean = a.mean + delta * nb / static_cast<double>(out.count);
  out.m2 = a.m2 + b.m2 + delta * delta * na * nb / static_cast<double>(out.count);
  return out;
}

std::vector<double> sample_uniform_phase(PhaseRng& rng, long long count) {
  if (count < 1) {
    throw std::invalid_argument("sample_uniform_phase: count must be >= 1");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  for (auto& v : out) v = rng.next_phase();
  return out;
}

CosPhaseResult cos_phase_experiment(PhaseRng& rng, long long count, int bins) {
  if (count < 2) {
    throw std::invalid_argument("cos_phase_experiment: count must be >= 2");
  }
  if (bins < 1) {
    throw std::invalid_argument("cos_phase_experiment: bins must be >= 1");
  }
  CosPhaseResult out;
  out.histogram.assign(bins, 0);
  RunningStats stats;
  for (long long i = 0; i < count; ++i) {
    const double c = std::cos(rng.next_phase());
    stats.add(c);
    int bin = static_cast<int>((c + 1.0) * 0.5 * bins);
    if (bin == bins) bin = bins - 1;  // c == 1 lands in the top cell
    ++out.histogram[bin];
  }
  out.mean = stats.mean;
  out.standard_error = stats.standard_error();
  return out;
}

}  // namespace wepsim
