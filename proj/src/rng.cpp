#include "loreg/rng.hpp"

#include <cmath>

namespace loreg {

namespace {
constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

uint64_t fnv1a64(std::string_view bytes, uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

CounterRng CounterRng::keyed(uint64_t seed, uint64_t replication, std::string_view purpose) {
  uint64_t h = mix64(seed + kGamma);
  h = mix64(h ^ (replication + kGamma));
  h = mix64(h ^ fnv1a64(purpose));
  return CounterRng(h);
}

uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGamma);
}

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0,1]
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  cached_ = r * std::sin(kTwoPi * u2);
  has_cached_ = true;
  return r * std::cos(kTwoPi * u2);
}

double CounterRng::next_uniform(double lo, double hi) {
  return lo + (hi - lo) * next_unit();
}

bool CounterRng::next_bernoulli(double prob) {
  return next_unit() < prob;
}

}  // namespace loreg
