#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace hvg {

struct NodeRecord {
  std::optional<std::int64_t> label;
  std::vector<double> attributes;
  double importance = 0.0;   // PageRank score, filled before encoding
  std::size_t rank = 0;      // 0 = most important, descending order
};

struct EdgeRecord {
  std::size_t source = 0;
  std::size_t target = 0;
  std::optional<std::int64_t> label;
  std::vector<double> attributes;
};

/// One directed attributed graph. Immutable after load + rank assignment.
struct AttributedGraph {
  std::vector<NodeRecord> nodes;
  std::vector<EdgeRecord> edges;
  int label = 0;
};

/// Damped power iteration over the directed edge set. Dangling nodes spread
/// their mass uniformly; parallel edges count with multiplicity. Scores are
/// renormalized every sweep, so they sum to 1 and symmetric graphs come out
/// exactly uniform. An edgeless graph yields uniform scores.
std::vector<double> pagerank(const AttributedGraph& g, double damping = 0.85,
                             int max_iter = 100, double tol = 1e-10);

/// Sorts nodes by descending importance (ties: ascending node index) and
/// writes rank 0..n-1 into the records. Requires importance to be populated.
void assign_ranks(AttributedGraph& g);

/// pagerank + assign_ranks in one step.
void rank_by_pagerank(AttributedGraph& g, double damping = 0.85);

/// Bucket index floor(rank * levels / node_count), in [0, levels). Graphs
/// with more nodes than buckets share buckets and positional uniqueness
/// degrades to per-bucket granularity.
std::size_t rank_bucket(std::size_t rank, std::size_t node_count, std::size_t levels);

}  // namespace hvg
