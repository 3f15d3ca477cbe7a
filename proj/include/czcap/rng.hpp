#pragma once

// Counter-based 64-bit generator (splitmix64 finalizer over seed + counter).
// The k-th draw of a stream is a pure function of (seed, k), so streams are
// platform independent and trivially splittable for parallel scans.

#include <cstdint>

namespace czcap {

namespace detail {
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}
}  // namespace detail

// k-th 64-bit word of the stream with the given seed
inline std::uint64_t rng_word(std::uint64_t seed, std::uint64_t k) {
  return detail::mix64(seed + (k + 1) * 0x9E3779B97F4A7C15ULL);
}

// uniform double in [0, 1) with 53 random bits
inline double rng_unit(std::uint64_t seed, std::uint64_t k) {
  return static_cast<double>(rng_word(seed, k) >> 11) * 0x1.0p-53;
}

// sequential convenience wrapper around the counter scheme
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t start = 0)
      : seed_(seed), counter_(start) {}

  std::uint64_t next_word() { return rng_word(seed_, counter_++); }
  double next_unit() { return rng_unit(seed_, counter_++); }
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace czcap
