#pragma once

#include <cstdint>

namespace qcqp {

/// Counter-based deterministic random stream: output depends only on
/// (seed, stream, counter), never on thread scheduling. Gaussians use
/// Box-Muller on the counter stream.
class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  uint64_t next_u64() {
    return mix(mix(mix(seed_) ^ stream_) ^ counter_++);
  }

  /// Uniform on (0,1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (two uniforms per draw).
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

 private:
  static uint64_t mix(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  uint64_t seed_;
  uint64_t stream_;
  uint64_t counter_ = 0;
};

}  // namespace qcqp
