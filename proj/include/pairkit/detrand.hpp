#pragma once
// Deterministic randomness utilities. Every sampling decision in the pipeline
// derives from an explicit seed through these helpers, so identical configs
// reproduce identical artifacts byte for byte.

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace pairkit::detrand {

// splitmix64 (public domain, Vigna). Used to mix seeds with tags.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a 64-bit string hash; stable across platforms, not cryptographic.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b));
}

constexpr std::uint64_t mix(std::uint64_t a, std::string_view tag) {
  return mix(a, fnv1a64(tag));
}

// Seeded generator built on std::mt19937_64, whose output sequence is fully
// specified by the standard. Bounded draws use rejection sampling instead of
// std::uniform_int_distribution (whose mapping is implementation-defined), so
// results are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Unbiased draw in [0, n). n must be > 0.
  std::size_t uniform_index(std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    std::uint64_t x, r;
    do {
      x = gen_();
      r = x % bound;
    } while (x - r > std::numeric_limits<std::uint64_t>::max() - (bound - 1));
    return static_cast<std::size_t>(r);
  }

  // 53-bit draw in [0, 1).
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace pairkit::detrand
