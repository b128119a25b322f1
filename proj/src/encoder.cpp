#include "hvg/encoder.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hvg {

namespace {

// Widens degenerate [x, x] domains so the linear codebook has a valid range.
std::pair<double, double> usable_bounds(std::pair<double, double> b) {
  if (!(b.first < b.second)) return {b.first, b.first + 1.0};
  return b;
}

}  // namespace

CodebookSet::CodebookSet(const EncoderConfig& cfg, const FeatureManifest& manifest,
                         const AttributeBounds& bounds)
    : cfg_(cfg),
      manifest_(manifest),
      bounds_(bounds),
      categorical_(cfg.dim, cfg.k(), derive_stream(cfg.seed, "categorical")),
      rank_book_(cfg.rank_levels, cfg.dim, cfg.k(), derive_stream(cfg.seed, "rank")) {
  if (manifest.node_attributes) {
    if (bounds.node_attr.size() != manifest.node_attr_dim) {
      throw std::invalid_argument("CodebookSet: node attribute bounds arity mismatch");
    }
    for (std::size_t j = 0; j < manifest.node_attr_dim; ++j) {
      auto [lo, hi] = usable_bounds(bounds.node_attr[j]);
      node_attr_books_.emplace_back(lo, hi, cfg.attr_levels, cfg.alpha, cfg.beta,
                                    cfg.dim, cfg.k(),
                                    derive_stream(cfg.seed, "node_attr", j));
    }
  }
  if (manifest.edge_attributes) {
    if (bounds.edge_attr.size() != manifest.edge_attr_dim) {
      throw std::invalid_argument("CodebookSet: edge attribute bounds arity mismatch");
    }
    for (std::size_t j = 0; j < manifest.edge_attr_dim; ++j) {
      auto [lo, hi] = usable_bounds(bounds.edge_attr[j]);
      edge_attr_books_.emplace_back(lo, hi, cfg.attr_levels, cfg.alpha, cfg.beta,
                                    cfg.dim, cfg.k(),
                                    derive_stream(cfg.seed, "edge_attr", j));
    }
  }
}

CodebookSet CodebookSet::build(const EncoderConfig& cfg, const FeatureManifest& manifest,
                               const AttributeBounds& bounds) {
  return CodebookSet(cfg, manifest, bounds);
}

Hypervector CodebookSet::node_label(std::int64_t label) const {
  return categorical_.get("node_label", label);
}

Hypervector CodebookSet::edge_label(std::int64_t label) const {
  return categorical_.get("edge_label", label);
}

const Hypervector& CodebookSet::rank_vector(std::size_t bucket) const {
  return rank_book_.embed(static_cast<std::int64_t>(bucket));
}

Hypervector CodebookSet::edge_role(std::size_t source_bucket,
                                   std::size_t target_bucket) const {
  // One categorical key per ordered bucket pair.
  return categorical_.get("edge_role",
                          static_cast<std::int64_t>(source_bucket * cfg_.rank_levels +
                                                    target_bucket));
}

Hypervector CodebookSet::node_attributes(std::span<const double> values) const {
  return embed_attribute_vector(values, node_attr_books_, categorical_, "node_attr_dim");
}

Hypervector CodebookSet::edge_attributes(std::span<const double> values) const {
  return embed_attribute_vector(values, edge_attr_books_, categorical_, "edge_attr_dim");
}

Hypervector encode_node(const AttributedGraph& g, std::size_t node,
                        const CodebookSet& books) {
  const NodeRecord& rec = g.nodes.at(node);
  const std::size_t bucket =
      rank_bucket(rec.rank, g.nodes.size(), books.rank_levels());
  Hypervector v = books.rank_vector(bucket);
  if (rec.label) v = bind(v, books.node_label(*rec.label));
  if (!rec.attributes.empty()) v = bind(v, books.node_attributes(rec.attributes));
  return v;
}

Hypervector encode_message(const AttributedGraph& g, std::size_t edge,
                           const CodebookSet& books) {
  const EdgeRecord& e = g.edges.at(edge);
  const std::size_t n = g.nodes.size();
  const std::size_t src_bucket =
      rank_bucket(g.nodes[e.source].rank, n, books.rank_levels());
  const std::size_t dst_bucket =
      rank_bucket(g.nodes[e.target].rank, n, books.rank_levels());

  Hypervector m = encode_node(g, e.source, books);
  if (e.label) m = bind(m, books.edge_label(*e.label));
  if (!e.attributes.empty()) m = bind(m, books.edge_attributes(e.attributes));
  m = bind(m, books.edge_role(src_bucket, dst_bucket));
  m = bind(m, encode_node(g, e.target, books));
  m = bind(m, books.rank_vector(src_bucket));
  return m;
}

EncodedGraph encode_graph(const AttributedGraph& g, const EncoderConfig& cfg,
                          const CodebookSet& books, bool keep_provenance) {
  if (cfg.layers != 2 && cfg.layers != 3) {
    throw std::invalid_argument("encode_graph: layers must be 2 or 3");
  }
  const std::size_t n = g.nodes.size();
  if (n == 0) throw std::invalid_argument("encode_graph: empty graph");

  const std::size_t q = books.rank_levels();
  auto message_weight = [&](std::size_t source) -> std::uint32_t {
    if (cfg.weighting == WeightingMode::kUniform) return 1;
    const std::size_t bucket = rank_bucket(g.nodes[source].rank, n, q);
    return static_cast<std::uint32_t>(std::max<std::size_t>(1, q - bucket));
  };

  // Visit sources in descending importance.
  std::vector<std::size_t> by_rank(n);
  for (std::size_t v = 0; v < n; ++v) by_rank[g.nodes[v].rank] = v;

  std::vector<std::vector<std::size_t>> outgoing(n);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    outgoing[g.edges[e].source].push_back(e);
  }

  std::vector<Hypervector> node_vecs(n);
  for (std::size_t v = 0; v < n; ++v) node_vecs[v] = encode_node(g, v, books);

  EncodedGraph out;
  out.label = g.label;
  VoteVector votes(cfg.dim);

  if (g.edges.empty()) {
    // No messages to emit; bundle the bare node vectors instead.
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t v = by_rank[r];
      const std::uint32_t w = message_weight(v);
      votes.accumulate(node_vecs[v], w);
      if (keep_provenance) {
        out.provenance.push_back({v, v, 1, w, node_vecs[v],
                                  books.rank_vector(rank_bucket(g.nodes[v].rank, n, q))});
      }
    }
    out.vector = votes.bundle(books.k());
    return out;
  }

  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t v = by_rank[r];
    const Hypervector v_role = books.rank_vector(rank_bucket(g.nodes[v].rank, n, q));
    for (std::size_t e : outgoing[v]) {
      const std::size_t u = g.edges[e].target;
      Hypervector m = node_vecs[v];
      const EdgeRecord& rec = g.edges[e];
      if (rec.label) m = bind(m, books.edge_label(*rec.label));
      if (!rec.attributes.empty()) m = bind(m, books.edge_attributes(rec.attributes));
      m = bind(m, books.edge_role(rank_bucket(g.nodes[v].rank, n, q),
                                  rank_bucket(g.nodes[u].rank, n, q)));
      m = bind(m, node_vecs[u]);
      m = bind(m, v_role);

      const std::uint32_t w = message_weight(v);
      votes.accumulate(m, w);
      if (keep_provenance) out.provenance.push_back({v, u, 2, w, m, v_role});

      if (cfg.layers == 3) {
        // One extra message per two-hop walk v -> u -> w, built on top of the
        // stored first-hop message.
        for (std::size_t e2 : outgoing[u]) {
          const EdgeRecord& rec2 = g.edges[e2];
          Hypervector m3 = m;
          if (rec2.label) m3 = bind(m3, books.edge_label(*rec2.label));
          m3 = bind(m3, books.edge_role(rank_bucket(g.nodes[u].rank, n, q),
                                        rank_bucket(g.nodes[rec2.target].rank, n, q)));
          m3 = bind(m3, node_vecs[rec2.target]);
          votes.accumulate(m3, w);
          if (keep_provenance) {
            out.provenance.push_back({v, rec2.target, 3, w, std::move(m3), v_role});
          }
        }
      }
    }
  }
  out.vector = votes.bundle(books.k());
  return out;
}

}  // namespace hvg
