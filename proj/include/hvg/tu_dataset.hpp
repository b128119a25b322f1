#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "hvg/encoder.hpp"
#include "hvg/graph.hpp"

namespace hvg {

/// A dataset directory is missing a mandatory file.
class TuLoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file exists but its contents violate the format; the message carries
/// the offending file and line number.
class TuFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TuCorpus {
  std::string name;
  std::vector<AttributedGraph> graphs;
  FeatureManifest manifest;
  std::size_t num_classes = 0;
  /// Original class labels in sorted order; graph labels are remapped to the
  /// position in this table.
  std::vector<std::int64_t> class_labels;
  /// Reverse edges that were missing from the edge file and added during
  /// symmetrization.
  std::size_t repaired_edges = 0;
};

/// Reads the plain-text multi-file layout: NAME_A.txt (1-based "i, j" edge
/// pairs), NAME_graph_indicator.txt, NAME_graph_labels.txt, plus optional
/// node/edge label and attribute files. Node ids are rebased per graph, the
/// undirected edge list is validated to contain both directions (missing
/// reverses are added with a warning), and graph labels are remapped to
/// contiguous 0-based ids preserving sorted order.
TuCorpus load_tu_dataset(const std::filesystem::path& dir, const std::string& name);

/// Writes a corpus back out in the same layout. load(save(load(x))) is
/// identical to load(x).
void save_tu_dataset(const TuCorpus& corpus, const std::filesystem::path& dir);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Seeded uniform shuffle; train takes floor(train_fraction * n) graphs.
/// No stratification. Throws if either side would be empty.
SplitIndices split_corpus(std::size_t corpus_size, double train_fraction,
                          std::uint64_t seed);

/// Class-stratified variant: each class is shuffled and split separately at
/// floor(train_fraction * class size). Off by default everywhere; opt in via
/// the CLI flag.
SplitIndices split_corpus_stratified(const TuCorpus& corpus, double train_fraction,
                                     std::uint64_t seed);

/// Per-dimension [min, max] of node/edge attributes over the given graphs
/// (normally the training split).
AttributeBounds compute_bounds(const TuCorpus& corpus,
                               const std::vector<std::size_t>& graph_indices);

}  // namespace hvg
