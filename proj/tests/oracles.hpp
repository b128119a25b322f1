// Independent reference implementations used to check the library. These
// deliberately take the slow, obvious route: per-bit loops, dense matrices
// and exhaustive scans, sharing no code with the implementations they verify.

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hvg/cotm.hpp"
#include "hvg/graph.hpp"
#include "hvg/hypervector.hpp"

namespace oracle {

inline std::size_t popcount_bitwise(const hvg::Hypervector& v) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < v.dim(); ++i) n += v.test(i);
  return n;
}

inline std::size_t hamming_bitwise(const hvg::Hypervector& a, const hvg::Hypervector& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) n += a.test(i) != b.test(i);
  return n;
}

// Top-k selection by explicit stable sort on (count desc, index asc).
inline std::vector<std::size_t> top_k_positions(const std::vector<std::uint32_t>& counts,
                                                std::size_t k) {
  std::vector<std::size_t> idx(counts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (counts[a] != counts[b]) return counts[a] > counts[b];
    return a < b;
  });
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

// Dense 50-iteration power iteration with uniform dangling redistribution.
inline std::vector<double> pagerank_dense(const hvg::AttributedGraph& g,
                                          double damping, int iterations = 50) {
  const std::size_t n = g.nodes.size();
  std::vector<std::vector<double>> transition(n, std::vector<double>(n, 0.0));
  std::vector<std::size_t> out_degree(n, 0);
  for (const hvg::EdgeRecord& e : g.edges) ++out_degree[e.source];
  for (const hvg::EdgeRecord& e : g.edges) {
    transition[e.target][e.source] += 1.0 / static_cast<double>(out_degree[e.source]);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (out_degree[v] == 0) {
      for (std::size_t u = 0; u < n; ++u) transition[u][v] = 1.0 / static_cast<double>(n);
    }
  }
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), next(n);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t u = 0; u < n; ++u) {
      double acc = 0.0;
      for (std::size_t v = 0; v < n; ++v) acc += transition[u][v] * x[v];
      next[u] = (1.0 - damping) / static_cast<double>(n) + damping * acc;
    }
    double total = 0.0;
    for (double val : next) total += val;
    for (double& val : next) val /= total;
    x = next;
  }
  return x;
}

// Clause conjunction evaluated straight off the automata states.
inline bool clause_eval_bruteforce(const hvg::ClauseBank& bank, std::size_t clause,
                                   const hvg::Hypervector& x, bool training) {
  const std::size_t d = bank.dim();
  const int n = bank.states_per_action();
  bool any = false;
  for (std::size_t lit = 0; lit < 2 * d; ++lit) {
    if (bank.state(clause, lit) <= n) continue;
    any = true;
    const bool value = lit < d ? x.test(lit) : !x.test(lit - d);
    if (!value) return false;
  }
  return any ? true : training;
}

inline std::vector<std::int64_t> class_sums_bruteforce(const hvg::CotmModel& model,
                                                       const hvg::Hypervector& x,
                                                       bool training) {
  const auto& cfg = model.config();
  std::vector<std::int64_t> sums(cfg.num_classes, 0);
  for (std::size_t t = 0; t < cfg.num_clauses; ++t) {
    if (!clause_eval_bruteforce(model.bank(), t, x, training)) continue;
    for (std::size_t y = 0; y < cfg.num_classes; ++y) sums[y] += model.weight(t, y);
  }
  return sums;
}

}  // namespace oracle
