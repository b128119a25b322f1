#include "hvg/hypervector.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace hvg {

Hypervector::Hypervector(std::size_t dim) : dim_(dim), words_((dim + 63) / 64, 0) {}

Hypervector Hypervector::random_sparse(std::size_t dim, std::size_t k, Rng& rng) {
  if (dim == 0) throw std::invalid_argument("random_sparse: dim == 0");
  if (k == 0 || k > dim) throw std::invalid_argument("random_sparse: need 0 < k <= dim");
  // Partial Fisher-Yates over the index range; exactly k draws from rng.
  std::vector<std::uint32_t> idx(dim);
  std::iota(idx.begin(), idx.end(), 0);
  Hypervector v(dim);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.next_below(dim - i));
    std::swap(idx[i], idx[j]);
    v.set(idx[i]);
  }
  return v;
}

Hypervector Hypervector::from_bits(const std::vector<int>& bits) {
  Hypervector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) v.set(i);
  }
  return v;
}

std::size_t Hypervector::popcount() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::uint32_t> Hypervector::active_bits() const {
  std::vector<std::uint32_t> out;
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    std::uint64_t w = words_[wi];
    while (w) {
      out.push_back(static_cast<std::uint32_t>(wi * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

Hypervector bind(const Hypervector& a, const Hypervector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("bind: dimension mismatch");
  Hypervector out = a;
  auto wa = out.words();
  auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) wa[i] ^= wb[i];
  return out;
}

std::size_t hamming(const Hypervector& a, const Hypervector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("hamming: dimension mismatch");
  auto wa = a.words();
  auto wb = b.words();
  std::size_t n = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) {
    n += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
  }
  return n;
}

void VoteVector::accumulate(const Hypervector& v, std::uint32_t weight) {
  if (v.dim() != counts_.size()) throw std::invalid_argument("accumulate: dimension mismatch");
  auto words = v.words();
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    std::uint64_t w = words[wi];
    while (w) {
      counts_[wi * 64 + std::countr_zero(w)] += weight;
      w &= w - 1;
    }
  }
}

Hypervector VoteVector::bundle(std::size_t k) const {
  const std::size_t dim = counts_.size();
  if (k > dim) throw std::invalid_argument("bundle: k > dim");
  Hypervector out(dim);
  if (k == 0) return out;
  std::vector<std::uint32_t> idx(dim);
  std::iota(idx.begin(), idx.end(), 0);
  auto before = [this](std::uint32_t a, std::uint32_t b) {
    if (counts_[a] != counts_[b]) return counts_[a] > counts_[b];
    return a < b;  // total order: ties at the cut resolve to the lowest index
  };
  if (k < dim) std::nth_element(idx.begin(), idx.begin() + (k - 1), idx.end(), before);
  for (std::size_t i = 0; i < k; ++i) out.set(idx[i]);
  return out;
}

}  // namespace hvg
