#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace hvg {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Deterministic 64-bit generator (splitmix64). Used everywhere instead of
/// <random> engines + distributions, whose outputs are not identical across
/// standard library implementations. Identical seed => identical stream on
/// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    return mix64(z);
  }

  /// Unbiased integer in [0, bound). bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::next_below: bound == 0");
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      std::uint64_t cutoff = (-bound) % bound;
      while (low < cutoff) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bernoulli(double p) { return next_unit() < p; }

 private:
  std::uint64_t state_;
};

// Stream splitting: every (namespace, keys...) tuple maps to its own seed, so
// a codebook entry comes out identical no matter when or in which order it is
// materialized. The chain is order-sensitive: ns, then each key in turn.
inline std::uint64_t derive_stream(std::uint64_t master, std::string_view ns) {
  return mix64(master ^ fnv1a64(ns));
}

inline std::uint64_t derive_stream(std::uint64_t master, std::string_view ns,
                                   std::uint64_t k0) {
  return mix64(derive_stream(master, ns) ^ (k0 + 0x9e3779b97f4a7c15ULL));
}

inline std::uint64_t derive_stream(std::uint64_t master, std::string_view ns,
                                   std::uint64_t k0, std::uint64_t k1) {
  return mix64(derive_stream(master, ns, k0) ^ (k1 + 0x2545f4914f6cdd1dULL));
}

}  // namespace hvg
