#include "hvg/explain.hpp"

#include <cmath>
#include <stdexcept>

namespace hvg {

VoteVector aggregate_literal_votes(
    const ClauseBank& bank,
    std::span<const std::pair<std::size_t, std::int32_t>> active, bool weighted) {
  VoteVector votes(bank.dim());
  for (const auto& [clause, weight] : active) {
    const auto w = static_cast<std::uint32_t>(weighted ? weight : 1);
    for (std::uint32_t lit : bank.included_literals(clause)) {
      if (lit < bank.dim()) votes.add(lit, w);
    }
  }
  return votes;
}

Hypervector binarize_votes(const VoteVector& votes, double sparsity) {
  const auto k = static_cast<std::size_t>(
      std::llround(sparsity * static_cast<double>(votes.dim())));
  return votes.bundle(k);
}

std::pair<std::vector<std::size_t>, std::size_t> nearest_candidate(
    std::span<const Hypervector> candidates, const Hypervector& prediction_vector) {
  if (candidates.empty()) throw std::invalid_argument("nearest_candidate: no candidates");
  std::vector<std::size_t> distances(candidates.size());
  std::size_t winner = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    distances[i] = hamming(candidates[i], prediction_vector);
    if (distances[i] < distances[winner]) winner = i;
  }
  return {std::move(distances), winner};
}

Explanation most_influential_node(const AttributedGraph& g, const EncodedGraph& enc,
                                  const Hypervector& prediction_vector,
                                  const CodebookSet& books, AttributionTarget target) {
  const std::size_t n = g.nodes.size();
  if (n == 0) throw std::invalid_argument("most_influential_node: empty graph");

  std::vector<Hypervector> roles(n);
  for (std::size_t v = 0; v < n; ++v) {
    roles[v] = books.rank_vector(rank_bucket(g.nodes[v].rank, n, books.rank_levels()));
  }

  Explanation out;
  out.prediction_vector = prediction_vector;
  auto [distances, winner] = nearest_candidate(roles, prediction_vector);
  out.distances = std::move(distances);

  if (target == AttributionTarget::kMessages) {
    for (const ProvenanceEntry& p : enc.provenance) {
      out.distances[p.source] =
          std::min(out.distances[p.source], hamming(p.message, prediction_vector));
    }
    winner = 0;
    for (std::size_t v = 1; v < n; ++v) {
      if (out.distances[v] < out.distances[winner]) winner = v;
    }
  }
  out.winner = winner;
  return out;
}

Explanation explain_graph(const AttributedGraph& g, const EncodedGraph& enc,
                          const CotmModel& model, const CodebookSet& books,
                          bool weighted_votes, AttributionTarget target) {
  const std::size_t predicted = model.predict(enc.vector);
  const auto active = model.active_clauses(enc.vector, predicted);

  VoteVector votes = aggregate_literal_votes(model.bank(), active, weighted_votes);
  Hypervector v_pred = binarize_votes(votes, books.config().sparsity);

  Explanation out = most_influential_node(g, enc, v_pred, books, target);
  out.predicted_class = predicted;
  out.votes = std::move(votes);
  return out;
}

}  // namespace hvg
