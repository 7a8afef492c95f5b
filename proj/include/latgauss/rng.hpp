#pragma once

#include <cstdint>

namespace latgauss {

// SplitMix64 (Steele, Lea & Flood 2014): a 64-bit counter-based generator.
// State advances by a fixed odd gamma; each output is a bijective hash of
// the counter, so identical seeds replay identical streams on every
// platform. split() derives statistically independent child streams, which
// is how commands hand out per-purpose generators from one --seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 random mantissa bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) by rejection on the top range.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~0ull) / bound);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  // Child stream: hash the parent state together with the stream index.
  SplitMix64 split(std::uint64_t stream) const {
    SplitMix64 mix(state_ ^ (0x6a09e667f3bcc909ull + stream));
    return SplitMix64(mix.next_u64());
  }

 private:
  std::uint64_t state_;
};

}  // namespace latgauss
