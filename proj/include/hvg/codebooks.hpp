#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hvg/hypervector.hpp"

namespace hvg {

/// Deterministic map from (namespace, integer label) to a near-orthogonal
/// random sparse vector. Entries are materialized lazily from a seed stream
/// derived from the key, so the vector for a key does not depend on when or
/// whether other keys were queried. Lookups are memoized and thread-safe.
class CategoricalCodebook {
 public:
  CategoricalCodebook(std::size_t dim, std::size_t k, std::uint64_t master_seed)
      : dim_(dim), k_(k), seed_(master_seed) {}

  CategoricalCodebook(const CategoricalCodebook& other)
      : dim_(other.dim_), k_(other.k_), seed_(other.seed_) {}
  CategoricalCodebook& operator=(const CategoricalCodebook&) = delete;

  Hypervector get(std::string_view ns, std::int64_t label) const;

  std::size_t dim() const { return dim_; }
  std::size_t k() const { return k_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::size_t dim_;
  std::size_t k_;
  std::uint64_t seed_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::pair<std::string, std::int64_t>, Hypervector> cache_;
};

/// Level chain over a scalar range [a, b): the base level is random and each
/// next level swaps flip_count active bits for flip_count inactive ones, so
/// consecutive levels sit at Hamming distance exactly 2 * flip_count while
/// popcount stays at k everywhere. Built once, then read-only.
class LinearCodebook {
 public:
  LinearCodebook(double lower, double upper, std::size_t levels, double alpha,
                 double beta, std::size_t dim, std::size_t k, std::uint64_t seed,
                 std::string_view ns = "linear");

  /// Nearest-partition lookup; x is clamped to [lower, upper] and the top
  /// boundary maps to the last level.
  const Hypervector& embed(double x) const;

  const Hypervector& level(std::size_t i) const { return levels_.at(i); }
  std::size_t num_levels() const { return levels_.size(); }
  std::size_t flip_count() const { return flips_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  double lower_, upper_, step_;
  std::size_t flips_;
  std::vector<Hypervector> levels_;
};

/// Independent near-orthogonal vector per discrete level; out-of-range level
/// queries clamp to the nearest valid level.
class IntervalCodebook {
 public:
  IntervalCodebook(std::size_t levels, std::size_t dim, std::size_t k,
                   std::uint64_t seed, std::string_view ns = "interval");

  const Hypervector& embed(std::int64_t level) const;

  std::size_t num_levels() const { return levels_.size(); }

 private:
  std::vector<Hypervector> levels_;
};

/// A d-dimensional attribute vector embeds dimension-wise: each dimension's
/// level vector is bound with that dimension's role vector and the d results
/// are bundled back to sparsity k. The role binding keeps equal values in
/// different dimensions from aliasing.
Hypervector embed_attribute_vector(std::span<const double> values,
                                   std::span<const LinearCodebook> books,
                                   const CategoricalCodebook& roles,
                                   std::string_view role_ns);

}  // namespace hvg
