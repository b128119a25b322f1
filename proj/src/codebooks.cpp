#include "hvg/codebooks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hvg {

Hypervector CategoricalCodebook::get(std::string_view ns, std::int64_t label) const {
  auto key = std::make_pair(std::string(ns), label);
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Rng rng(derive_stream(seed_, ns, static_cast<std::uint64_t>(label)));
  Hypervector v = Hypervector::random_sparse(dim_, k_, rng);
  std::unique_lock lock(mutex_);
  return cache_.emplace(std::move(key), std::move(v)).first->second;
}

LinearCodebook::LinearCodebook(double lower, double upper, std::size_t levels,
                               double alpha, double beta, std::size_t dim,
                               std::size_t k, std::uint64_t seed,
                               std::string_view ns)
    : lower_(lower), upper_(upper) {
  if (!(lower < upper)) throw std::invalid_argument("LinearCodebook: need lower < upper");
  if (levels < 2) throw std::invalid_argument("LinearCodebook: need at least 2 levels");
  if (alpha < 0 || beta < 0) throw std::invalid_argument("LinearCodebook: negative rate");
  step_ = (upper - lower) / static_cast<double>(levels);
  flips_ = static_cast<std::size_t>(std::llround((alpha + beta) * static_cast<double>(k)));
  if (flips_ < 1) throw std::invalid_argument("LinearCodebook: flip count rounds to zero");
  if (flips_ > k || flips_ > dim - k) {
    throw std::invalid_argument("LinearCodebook: flip count exceeds sparsity budget");
  }

  Rng rng(derive_stream(seed, ns));
  levels_.reserve(levels);
  levels_.push_back(Hypervector::random_sparse(dim, k, rng));
  for (std::size_t i = 1; i < levels; ++i) {
    const Hypervector& prev = levels_.back();
    std::vector<std::uint32_t> active = prev.active_bits();
    std::vector<std::uint32_t> inactive;
    inactive.reserve(dim - k);
    for (std::uint32_t j = 0; j < dim; ++j) {
      if (!prev.test(j)) inactive.push_back(j);
    }
    Hypervector next = prev;
    // Swap flips_ active bits out and flips_ inactive bits in: popcount is
    // preserved and the two changed sets are disjoint, so the step distance
    // is exactly 2 * flips_.
    for (std::size_t f = 0; f < flips_; ++f) {
      std::size_t j = f + static_cast<std::size_t>(rng.next_below(active.size() - f));
      std::swap(active[f], active[j]);
      next.clear(active[f]);
    }
    for (std::size_t f = 0; f < flips_; ++f) {
      std::size_t j = f + static_cast<std::size_t>(rng.next_below(inactive.size() - f));
      std::swap(inactive[f], inactive[j]);
      next.set(inactive[f]);
    }
    levels_.push_back(std::move(next));
  }
}

const Hypervector& LinearCodebook::embed(double x) const {
  if (std::isnan(x)) x = lower_;
  x = std::clamp(x, lower_, upper_);
  auto i = static_cast<std::size_t>(std::floor((x - lower_) / step_));
  if (i >= levels_.size()) i = levels_.size() - 1;
  return levels_[i];
}

IntervalCodebook::IntervalCodebook(std::size_t levels, std::size_t dim,
                                   std::size_t k, std::uint64_t seed,
                                   std::string_view ns) {
  if (levels == 0) throw std::invalid_argument("IntervalCodebook: need at least 1 level");
  levels_.reserve(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    Rng rng(derive_stream(seed, ns, i));
    levels_.push_back(Hypervector::random_sparse(dim, k, rng));
  }
}

const Hypervector& IntervalCodebook::embed(std::int64_t level) const {
  if (level < 0) level = 0;
  auto i = static_cast<std::size_t>(level);
  if (i >= levels_.size()) i = levels_.size() - 1;
  return levels_[i];
}

Hypervector embed_attribute_vector(std::span<const double> values,
                                   std::span<const LinearCodebook> books,
                                   const CategoricalCodebook& roles,
                                   std::string_view role_ns) {
  if (values.empty() || values.size() != books.size()) {
    throw std::invalid_argument("embed_attribute_vector: arity mismatch");
  }
  VoteVector votes(roles.dim());
  for (std::size_t j = 0; j < values.size(); ++j) {
    votes.accumulate(bind(books[j].embed(values[j]),
                          roles.get(role_ns, static_cast<std::int64_t>(j))));
  }
  return votes.bundle(roles.k());
}

}  // namespace hvg
