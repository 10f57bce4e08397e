#include "vtr/rng.hpp"

#include <cmath>
#include <numbers>

namespace vtr {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : key_(mix(mix(seed) ^ stream)) {}

Rng::Rng(std::uint64_t key, std::uint64_t counter, bool) : key_(key), counter_(counter) {}

Rng Rng::split(std::uint64_t substream) const {
  return Rng(mix(key_ ^ mix(substream ^ 0xa02bdbf7bb3c0a7ULL)), 0, true);
}

std::uint64_t Rng::next_u64() { return mix(key_ ^ (0x9e3779b97f4a7c15ULL * ++counter_)); }

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  // Two fresh uniforms per draw; no cached second value, so split/replay
  // behavior stays counter-exact.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int Rng::uniform_int(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next_u64() % span);
}

std::vector<double> Rng::normal_vec(std::size_t n) {
  std::vector<double> out(n);
  for (double& v : out) v = normal();
  return out;
}

}  // namespace vtr
