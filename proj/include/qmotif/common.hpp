#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qmotif {

// Error categories. The CLI maps these onto distinct exit codes, so new
// failure modes should reuse an existing category where possible.
class ParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class PostselectError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// splitmix64 generator. Small, fast, and bit-stable across platforms and
/// standard-library implementations; every seeded code path in the library
/// draws from this engine so that identical seeds give identical results
/// everywhere.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t operator()() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the top 53 bits of one draw.
  double uniform01() { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~0ull; }

 private:
  std::uint64_t state_;
};

/// Derives a child seed from (seed, word) with one keyed splitmix64 step.
/// Used for splitting a master seed into independent per-instance streams:
/// chaining derive_seed over a tuple of words gives a stable address for a
/// stream, so adding new configurations never disturbs existing ones.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t word) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (word + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Smallest b with 2^b >= n (n >= 1).
inline int ceil_log2(std::uint64_t n) {
  int b = 0;
  while ((std::uint64_t{1} << b) < n) ++b;
  return b;
}

/// Hamming distance between the `bits`-bit representations of a and b.
inline int hamming(std::uint64_t a, std::uint64_t b, int bits) {
  if (bits < 1 || bits > 63) throw std::invalid_argument("hamming: bits out of range");
  const std::uint64_t limit = std::uint64_t{1} << bits;
  if (a >= limit || b >= limit)
    throw std::invalid_argument("hamming: value does not fit in " + std::to_string(bits) + " bits");
  return std::popcount(a ^ b);
}

}  // namespace qmotif
