#pragma once

#include <cstdint>
#include <vector>

namespace vtr {

// Splittable counter-based generator. Every draw is a pure hash of
// (key, counter), so streams can be split without sharing state and results
// are identical across platforms and compilers. Not cryptographic.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // Independent child stream; deterministic in (parent key, substream).
  Rng split(std::uint64_t substream) const;

  std::uint64_t next_u64();
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  double normal();                        // standard normal, Box-Muller
  int uniform_int(int lo, int hi);        // inclusive bounds

  std::vector<double> normal_vec(std::size_t n);

 private:
  Rng(std::uint64_t key, std::uint64_t counter, bool raw);
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace vtr
