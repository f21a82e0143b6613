#pragma once

#include <cstdint>
#include <string_view>

namespace loreg {

/// Counter-based generator: output i is the SplitMix64 finalizer applied to
/// key + (i+1) * 0x9E3779B97F4A7C15. Streams never overlap for distinct keys
/// in practice, and a stream is fully determined by its key, so draws are
/// reproducible under any parallel schedule.
class CounterRng {
 public:
  explicit CounterRng(uint64_t key) : key_(key) {}

  /// Stream key derived from (seed, replication, purpose). Each purpose tag
  /// ("data", "graph", ...) gets an independent stream per replication.
  static CounterRng keyed(uint64_t seed, uint64_t replication, std::string_view purpose);

  uint64_t next_u64();

  /// Uniform on [0, 1), 53-bit resolution.
  double next_unit();

  /// Standard normal via Box-Muller on (0,1] x [0,1); generates pairs and
  /// caches the second value.
  double next_normal();

  /// Uniform on [lo, hi).
  double next_uniform(double lo, double hi);

  bool next_bernoulli(double prob);

  uint64_t key() const { return key_; }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
uint64_t mix64(uint64_t z);

/// FNV-1a 64-bit hash; used for content checksums and stream derivation.
uint64_t fnv1a64(std::string_view bytes, uint64_t h = 0xcbf29ce484222325ULL);

}  // namespace loreg
