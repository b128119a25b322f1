#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hvg/rng.hpp"

namespace hvg {

/// Fixed-dimension binary hypervector, bit-packed into 64-bit words.
///
/// Bit j lives in word j/64 at position j%64. Dimensions that are not a
/// multiple of 64 are padded with a zeroed tail; every operation keeps the
/// tail clear so word-parallel popcounts stay exact.
class Hypervector {
 public:
  Hypervector() = default;
  explicit Hypervector(std::size_t dim);

  /// Vector with exactly k of dim bits set, drawn from rng. The same rng
  /// state always yields the same vector.
  static Hypervector random_sparse(std::size_t dim, std::size_t k, Rng& rng);

  /// Convenience for small literal vectors in tests and examples.
  static Hypervector from_bits(const std::vector<int>& bits);

  std::size_t dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void clear(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t popcount() const;

  /// Indices of set bits, ascending.
  std::vector<std::uint32_t> active_bits() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  bool operator==(const Hypervector& other) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Element-wise XOR. Self-inverse: bind(bind(a, b), b) == a. The result's
/// popcount is not fixed (two k-sparse inputs densify toward 2k(1 - k/D));
/// only generation and bundling enforce the sparsity target.
Hypervector bind(const Hypervector& a, const Hypervector& b);

/// Number of differing bits. Throws std::invalid_argument on dimension mismatch.
std::size_t hamming(const Hypervector& a, const Hypervector& b);

/// Per-position vote counts used to bundle many hypervectors back to a fixed
/// sparsity. Single writer during accumulation, then read-only.
class VoteVector {
 public:
  VoteVector() = default;
  explicit VoteVector(std::size_t dim) : counts_(dim, 0) {}
  explicit VoteVector(std::vector<std::uint32_t> counts) : counts_(std::move(counts)) {}

  std::size_t dim() const { return counts_.size(); }
  const std::vector<std::uint32_t>& counts() const { return counts_; }

  /// counts[j] += weight for every active bit j of v.
  void accumulate(const Hypervector& v, std::uint32_t weight = 1);

  /// counts[position] += weight.
  void add(std::size_t position, std::uint32_t weight) { counts_.at(position) += weight; }

  /// Top-k positions by count; ties at the cut go to the lowest bit index, so
  /// the result is deterministic for any input, including all-zero counts
  /// (which yield bits {0..k-1}). Output popcount is exactly k.
  Hypervector bundle(std::size_t k) const;

 private:
  std::vector<std::uint32_t> counts_;
};

}  // namespace hvg
