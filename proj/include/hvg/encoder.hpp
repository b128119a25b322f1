#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hvg/codebooks.hpp"
#include "hvg/graph.hpp"
#include "hvg/hypervector.hpp"

namespace hvg {

/// Which feature files a corpus provides; drives which factors enter the
/// node and message compositions.
struct FeatureManifest {
  bool node_labels = false;
  bool node_attributes = false;
  bool edge_labels = false;
  bool edge_attributes = false;
  std::size_t node_attr_dim = 0;
  std::size_t edge_attr_dim = 0;
};

/// Per-dimension [min, max] domains for the linear codebooks, computed over
/// the training split only and frozen into the model.
struct AttributeBounds {
  std::vector<std::pair<double, double>> node_attr;
  std::vector<std::pair<double, double>> edge_attr;
};

enum class WeightingMode { kUniform, kRankWeighted };

struct EncoderConfig {
  std::size_t dim = 6400;
  double sparsity = 0.2;
  int layers = 2;
  WeightingMode weighting = WeightingMode::kUniform;
  std::uint64_t seed = 1;
  std::size_t attr_levels = 100;  // quantization levels for scalar attributes
  std::size_t rank_levels = 8;    // rank buckets for the importance embedding
  double alpha = 0.02;            // continuity flip rate
  double beta = 0.005;            // noise flip rate

  std::size_t k() const {
    return static_cast<std::size_t>(static_cast<double>(dim) * sparsity + 0.5);
  }
};

/// All codebooks for one experiment, reconstructible bit-identically from
/// (config, manifest, bounds). Frozen after build; safe to share across
/// threads.
class CodebookSet {
 public:
  static CodebookSet build(const EncoderConfig& cfg, const FeatureManifest& manifest,
                           const AttributeBounds& bounds);

  Hypervector node_label(std::int64_t label) const;
  Hypervector edge_label(std::int64_t label) const;
  const Hypervector& rank_vector(std::size_t bucket) const;
  Hypervector edge_role(std::size_t source_bucket, std::size_t target_bucket) const;
  Hypervector node_attributes(std::span<const double> values) const;
  Hypervector edge_attributes(std::span<const double> values) const;

  std::size_t dim() const { return cfg_.dim; }
  std::size_t k() const { return cfg_.k(); }
  std::size_t rank_levels() const { return cfg_.rank_levels; }
  const EncoderConfig& config() const { return cfg_; }
  const FeatureManifest& manifest() const { return manifest_; }
  const AttributeBounds& bounds() const { return bounds_; }

 private:
  CodebookSet(const EncoderConfig& cfg, const FeatureManifest& manifest,
              const AttributeBounds& bounds);

  EncoderConfig cfg_;
  FeatureManifest manifest_;
  AttributeBounds bounds_;
  CategoricalCodebook categorical_;
  IntervalCodebook rank_book_;
  std::vector<LinearCodebook> node_attr_books_;
  std::vector<LinearCodebook> edge_attr_books_;
};

/// One emitted message and where it came from. depth is 1 for the bare node
/// vectors of the edgeless fallback, 2 for node->edge->neighbor messages and
/// 3 for two-hop messages; source is the node whose role vector is bound into
/// the message (the node backward decoding can localize).
struct ProvenanceEntry {
  std::size_t source = 0;
  std::size_t target = 0;
  int depth = 2;
  std::uint32_t weight = 1;
  Hypervector message;
  Hypervector source_role;
};

struct EncodedGraph {
  Hypervector vector;
  std::vector<ProvenanceEntry> provenance;
  int label = 0;
};

/// psi(v): XOR of label vector, attribute-vector embedding and rank-bucket
/// role vector; factors a dataset does not provide are omitted.
Hypervector encode_node(const AttributedGraph& g, std::size_t node,
                        const CodebookSet& books);

/// Message for edge e = (v, u): psi(v) x edge label x edge attributes x edge
/// role x psi(u) x role(v). The trailing role factor makes the message
/// traceable back to its source node.
Hypervector encode_message(const AttributedGraph& g, std::size_t edge,
                           const CodebookSet& books);

/// Bundles all messages of a ranked graph into one k-sparse vector, visiting
/// sources in descending importance. cfg.layers == 3 additionally emits a
/// message per two-hop walk, built from the stored first-hop message. A graph
/// with no edges falls back to bundling the bare node vectors. Bulk corpus
/// encoding passes keep_provenance = false to skip retaining per-message
/// copies.
EncodedGraph encode_graph(const AttributedGraph& g, const EncoderConfig& cfg,
                          const CodebookSet& books, bool keep_provenance = true);

}  // namespace hvg
