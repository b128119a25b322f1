#include "hvg/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hvg {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double accuracy(const CotmModel& model, const std::vector<EncodedGraph>& samples) {
  if (samples.empty()) return 0.0;
  std::size_t hits = 0;
  for (const EncodedGraph& s : samples) {
    if (model.predict(s.vector) == static_cast<std::size_t>(s.label)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

}  // namespace

void ExperimentConfig::validate() const {
  if (encoder.dim == 0 || encoder.dim % 64 != 0) {
    throw std::invalid_argument("dim must be a positive multiple of 64");
  }
  if (!(encoder.sparsity > 0.0 && encoder.sparsity <= 0.5)) {
    throw std::invalid_argument("sparsity must be in (0, 0.5]");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must be in (0, 1)");
  }
  if (seeds.empty()) throw std::invalid_argument("need at least one seed");
  if (encoder.layers != 2 && encoder.layers != 3) {
    throw std::invalid_argument("layers must be 2 or 3");
  }
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
}

void rank_corpus(TuCorpus& corpus) {
  for (AttributedGraph& g : corpus.graphs) rank_by_pagerank(g);
}

std::vector<EncodedGraph> encode_graphs(const TuCorpus& corpus,
                                        const std::vector<std::size_t>& indices,
                                        const EncoderConfig& cfg,
                                        const CodebookSet& books) {
  std::vector<EncodedGraph> out;
  out.reserve(indices.size());
  for (std::size_t g : indices) {
    out.push_back(encode_graph(corpus.graphs.at(g), cfg, books,
                               /*keep_provenance=*/false));
  }
  return out;
}

SeedResult run_seed(const TuCorpus& corpus, const ExperimentConfig& cfg,
                    std::uint64_t seed, ModelArtifact* artifact_out) {
  SeedResult result;
  result.seed = seed;

  const SplitIndices split =
      cfg.stratified_split
          ? split_corpus_stratified(corpus, cfg.train_fraction, derive_stream(seed, "split"))
          : split_corpus(corpus.graphs.size(), cfg.train_fraction,
                         derive_stream(seed, "split"));
  result.train_size = split.train.size();
  result.test_size = split.test.size();

  auto t0 = std::chrono::steady_clock::now();
  EncoderConfig enc_cfg = cfg.encoder;
  enc_cfg.seed = derive_stream(seed, "codebooks");
  const AttributeBounds bounds = compute_bounds(corpus, split.train);
  const CodebookSet books = CodebookSet::build(enc_cfg, corpus.manifest, bounds);
  const std::vector<EncodedGraph> train = encode_graphs(corpus, split.train, enc_cfg, books);
  const std::vector<EncodedGraph> test = encode_graphs(corpus, split.test, enc_cfg, books);
  result.timings.encode_seconds = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  CotmConfig cotm_cfg = cfg.cotm;
  cotm_cfg.num_classes = corpus.num_classes;
  cotm_cfg.seed = derive_stream(seed, "train");
  CotmModel model(cotm_cfg, enc_cfg.dim);

  std::vector<Hypervector> xs;
  std::vector<int> ys;
  xs.reserve(train.size());
  ys.reserve(train.size());
  for (const EncodedGraph& s : train) {
    xs.push_back(s.vector);
    ys.push_back(s.label);
  }
  model.train(xs, ys);
  result.timings.train_seconds = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  result.train_accuracy = accuracy(model, train);
  result.test_accuracy = accuracy(model, test);
  result.timings.eval_seconds = seconds_since(t0);

  if (artifact_out) {
    *artifact_out = make_artifact(model, books, corpus.name, corpus.class_labels);
  }
  return result;
}

RunReport RunReport::from_results(std::vector<SeedResult> results, double total_seconds) {
  RunReport report;
  report.results = std::move(results);
  report.total_seconds = total_seconds;
  const std::size_t n = report.results.size();
  if (n == 0) return report;
  double sum = 0.0;
  for (const SeedResult& r : report.results) sum += r.test_accuracy;
  report.mean_test_accuracy = sum / static_cast<double>(n);
  double var = 0.0;
  for (const SeedResult& r : report.results) {
    const double d = r.test_accuracy - report.mean_test_accuracy;
    var += d * d;
  }
  report.std_test_accuracy = std::sqrt(var / static_cast<double>(n));
  return report;
}

RunReport run_bench(const TuCorpus& corpus, const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<SeedResult> results(cfg.seeds.size());

  if (cfg.jobs <= 1 || cfg.seeds.size() <= 1) {
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
      results[i] = run_seed(corpus, cfg, cfg.seeds[i]);
    }
  } else {
    // Seeds are independent; farm them out round-robin.
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), cfg.seeds.size());
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        try {
          for (std::size_t i = w; i < cfg.seeds.size(); i += workers) {
            results[i] = run_seed(corpus, cfg, cfg.seeds[i]);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }
  return RunReport::from_results(std::move(results), seconds_since(t0));
}

std::string to_hex(const Hypervector& v) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(v.words().size() * 16);
  for (std::uint64_t w : v.words()) {
    for (std::size_t byte = 0; byte < 8; ++byte) {
      const auto b = static_cast<unsigned>((w >> (8 * byte)) & 0xff);
      out.push_back(digits[b >> 4]);
      out.push_back(digits[b & 0xf]);
    }
  }
  return out;
}

Hypervector from_hex(const std::string& hex, std::size_t dim) {
  Hypervector v(dim);
  auto words = v.words();
  if (hex.size() != words.size() * 16) {
    throw std::invalid_argument("from_hex: payload length mismatch");
  }
  auto nibble = [](char c) -> std::uint64_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint64_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint64_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<std::uint64_t>(c - 'A' + 10);
    throw std::invalid_argument("from_hex: bad digit");
  };
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    std::uint64_t w = 0;
    for (std::size_t byte = 0; byte < 8; ++byte) {
      const std::uint64_t hi = nibble(hex[wi * 16 + 2 * byte]);
      const std::uint64_t lo = nibble(hex[wi * 16 + 2 * byte + 1]);
      w |= ((hi << 4) | lo) << (8 * byte);
    }
    words[wi] = w;
  }
  return v;
}

void save_encoded_corpus(const std::filesystem::path& path,
                         const std::vector<EncodedGraph>& encoded) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    out << i << ' ' << encoded[i].label << ' ' << to_hex(encoded[i].vector) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<EncodedGraph> load_encoded_corpus(const std::filesystem::path& path,
                                              std::size_t dim) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<EncodedGraph> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::size_t id = 0;
    int label = 0;
    std::string hex;
    if (!(ss >> id >> label >> hex)) {
      throw std::runtime_error(path.string() + ": bad record '" + line + "'");
    }
    EncodedGraph g;
    g.label = label;
    g.vector = from_hex(hex, dim);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace hvg
