#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hvg/cotm.hpp"
#include "hvg/encoder.hpp"
#include "hvg/model_io.hpp"
#include "hvg/tu_dataset.hpp"

namespace hvg {

/// Full configuration of one experiment run; the defaults are the fixed
/// "paper" preset used for every benchmark table row.
struct ExperimentConfig {
  std::filesystem::path dataset_dir;
  std::string dataset;
  EncoderConfig encoder;
  CotmConfig cotm;
  double train_fraction = 0.7;
  bool stratified_split = false;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  int jobs = 1;

  /// Enforces the documented invariants (dim a positive multiple of 64,
  /// sparsity in (0, 0.5], fraction in (0, 1), at least one seed).
  void validate() const;
};

struct PhaseTimings {
  double encode_seconds = 0.0;
  double train_seconds = 0.0;
  double eval_seconds = 0.0;
};

struct SeedResult {
  std::uint64_t seed = 0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  PhaseTimings timings;
};

struct RunReport {
  std::vector<SeedResult> results;
  double mean_test_accuracy = 0.0;
  double std_test_accuracy = 0.0;  // population standard deviation
  double total_seconds = 0.0;

  static RunReport from_results(std::vector<SeedResult> results, double total_seconds);
};

/// Ranks every graph by PageRank importance. Call once after load.
void rank_corpus(TuCorpus& corpus);

/// Encodes a set of graphs against frozen codebooks. Provenance is dropped
/// (bulk path).
std::vector<EncodedGraph> encode_graphs(const TuCorpus& corpus,
                                        const std::vector<std::size_t>& indices,
                                        const EncoderConfig& cfg,
                                        const CodebookSet& books);

/// One seeded split + codebook build + encode + train + evaluate cycle.
/// The seed splits into independent streams for the split, the codebooks and
/// the trainer. If artifact_out is non-null the trained model is exported.
SeedResult run_seed(const TuCorpus& corpus, const ExperimentConfig& cfg,
                    std::uint64_t seed, ModelArtifact* artifact_out = nullptr);

/// run_seed for every configured seed (cfg.jobs in parallel) plus the
/// mean/std summary.
RunReport run_bench(const TuCorpus& corpus, const ExperimentConfig& cfg);

/// Hex encoding of the packed words, least-significant byte first.
std::string to_hex(const Hypervector& v);
Hypervector from_hex(const std::string& hex, std::size_t dim);

/// One record per graph: "<graph-id> <label> <hex>" — the encoded-corpus
/// cache format produced by the encode subcommand.
void save_encoded_corpus(const std::filesystem::path& path,
                         const std::vector<EncodedGraph>& encoded);
std::vector<EncodedGraph> load_encoded_corpus(const std::filesystem::path& path,
                                              std::size_t dim);

}  // namespace hvg
