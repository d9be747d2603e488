#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace spreadgram {

// Deterministic random source. Every piece of randomness in a run is drawn
// from a stream derived from one root seed plus a named tag, so any stage
// (search, sampling, init, splits) can be reproduced in isolation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). Unbiased (modulo rejection).
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  std::uint32_t below32(std::uint32_t n) {
    return static_cast<std::uint32_t>(below(n));
  }

  // Uniform double in [0, 1).
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double range(double lo, double hi) { return lo + real() * (hi - lo); }

 private:
  std::mt19937_64 engine_;
};

// Stable seed for the named sub-stream of a root seed.
std::uint64_t substream_seed(std::uint64_t root, std::string_view tag,
                             std::uint64_t index);

inline Rng substream(std::uint64_t root, std::string_view tag,
                     std::uint64_t index = 0) {
  return Rng(substream_seed(root, tag, index));
}

}  // namespace spreadgram
