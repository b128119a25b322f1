#include "hvg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hvg {

std::vector<double> pagerank(const AttributedGraph& g, double damping,
                             int max_iter, double tol) {
  const std::size_t n = g.nodes.size();
  if (n == 0) throw std::invalid_argument("pagerank: empty graph");

  std::vector<std::size_t> out_degree(n, 0);
  for (const EdgeRecord& e : g.edges) ++out_degree[e.source];

  std::vector<double> scores(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);

  for (int iter = 0; iter < max_iter; ++iter) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (out_degree[v] == 0) dangling += scores[v];
    }
    const double base = (1.0 - damping) / static_cast<double>(n) +
                        damping * dangling / static_cast<double>(n);
    std::fill(next.begin(), next.end(), base);
    for (const EdgeRecord& e : g.edges) {
      next[e.target] += damping * scores[e.source] / static_cast<double>(out_degree[e.source]);
    }
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    for (double& x : next) x /= total;

    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - scores[v]);
    scores.swap(next);
    if (change < tol) break;
  }
  return scores;
}

void assign_ranks(AttributedGraph& g) {
  const std::size_t n = g.nodes.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&g](std::size_t a, std::size_t b) {
    return g.nodes[a].importance > g.nodes[b].importance;
  });
  for (std::size_t r = 0; r < n; ++r) g.nodes[order[r]].rank = r;
}

void rank_by_pagerank(AttributedGraph& g, double damping) {
  std::vector<double> scores = pagerank(g, damping);
  for (std::size_t v = 0; v < g.nodes.size(); ++v) g.nodes[v].importance = scores[v];
  assign_ranks(g);
}

std::size_t rank_bucket(std::size_t rank, std::size_t node_count, std::size_t levels) {
  if (node_count == 0 || levels == 0) throw std::invalid_argument("rank_bucket: empty domain");
  std::size_t b = rank * levels / node_count;
  return b < levels ? b : levels - 1;
}

}  // namespace hvg
