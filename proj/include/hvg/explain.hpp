#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hvg/cotm.hpp"
#include "hvg/encoder.hpp"

namespace hvg {

/// Result of decoding a prediction back to the node that drove it.
struct Explanation {
  std::size_t predicted_class = 0;
  VoteVector votes;               // per-literal counts across active clauses
  Hypervector prediction_vector;  // votes binarized to round(sparsity * dim) bits
  std::vector<std::size_t> distances;  // Hamming to each node's role vector
  std::size_t winner = 0;              // argmin distance, ties to lowest index
};

/// Adds each active clause's weight (or 1 in unweighted mode) to the count of
/// every included positive literal. Negated literals denote absence and are
/// skipped: they carry no positional information.
VoteVector aggregate_literal_votes(
    const ClauseBank& bank,
    std::span<const std::pair<std::size_t, std::int32_t>> active,
    bool weighted = true);

/// Top round(sparsity * dim) vote positions under the bundle tie rule.
Hypervector binarize_votes(const VoteVector& votes, double sparsity);

/// Hamming distance from the prediction vector to every candidate, plus the
/// argmin index (ties to the lowest index).
std::pair<std::vector<std::size_t>, std::size_t> nearest_candidate(
    std::span<const Hypervector> candidates, const Hypervector& prediction_vector);

/// Distance target for the per-node comparison.
enum class AttributionTarget {
  kRoleVector,  // the node's importance-rank role vector
  kMessages,    // reconstructed candidate messages from provenance
};

/// Hamming distance from the prediction vector to every node of a ranked
/// graph, plus the argmin winner. With kMessages, a node's distance is the
/// minimum over the provenance messages it originated; nodes that emitted
/// none fall back to their role vector.
Explanation most_influential_node(const AttributedGraph& g, const EncodedGraph& enc,
                                  const Hypervector& prediction_vector,
                                  const CodebookSet& books,
                                  AttributionTarget target = AttributionTarget::kRoleVector);

/// Full pipeline: predict, collect active clauses, aggregate votes, binarize
/// at the encoder's sparsity, locate the winner node.
Explanation explain_graph(const AttributedGraph& g, const EncodedGraph& enc,
                          const CotmModel& model, const CodebookSet& books,
                          bool weighted_votes = true,
                          AttributionTarget target = AttributionTarget::kRoleVector);

}  // namespace hvg
