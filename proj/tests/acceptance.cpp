// Acceptance suite: runs every gated criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Optional dataset benchmarks are
// skipped (with a SKIP line) when their data is absent.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "hvg/experiment.hpp"
#include "hvg/explain.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace hvg;

namespace {

int g_failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
  std::printf("%s %s%s%s\n", ok ? "PASS" : "FAIL", name, detail.empty() ? "" : ": ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

void skip(const char* name, const std::string& why) {
  std::printf("SKIP %s: %s\n", name, why.c_str());
  std::fflush(stdout);
}

struct Check {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

double bench_dataset(const fs::path& dir, const std::string& name, int jobs,
                     RunReport& out) {
  TuCorpus corpus = load_tu_dataset(dir, name);
  rank_corpus(corpus);
  ExperimentConfig cfg;
  cfg.dataset_dir = dir;
  cfg.dataset = name;
  cfg.jobs = jobs;
  cfg.validate();
  out = run_bench(corpus, cfg);
  return out.mean_test_accuracy;
}

// --- criteria ---------------------------------------------------------------

void mutag_reproduction(const fs::path& data_dir, int jobs) {
  const fs::path dir = data_dir / "MUTAG";
  if (!fs::exists(dir / "MUTAG_A.txt")) {
    report("mutag_reproduction", false, "dataset missing at " + dir.string());
    return;
  }
  RunReport report_data;
  const double mean = bench_dataset(dir, "MUTAG", jobs, report_data);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "mean test accuracy %.3f (need >= 0.80), std %.3f, %zu seeds, %.0f s "
                "(budget 900 s)",
                mean, report_data.std_test_accuracy, report_data.results.size(),
                report_data.total_seconds);
  report("mutag_reproduction", mean >= 0.80 && report_data.total_seconds <= 900.0, buf);
}

void aids_smoke(const fs::path& data_dir, int jobs) {
  const fs::path dir = data_dir / "AIDS";
  if (!fs::exists(dir / "AIDS_A.txt")) {
    skip("aids_smoke", "optional dataset not present under " + dir.string());
    return;
  }
  RunReport report_data;
  const double mean = bench_dataset(dir, "AIDS", jobs, report_data);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "mean test accuracy %.3f (need >= 0.65), %.0f s (budget 3600 s)", mean,
                report_data.total_seconds);
  report("aids_smoke", mean >= 0.65 && report_data.total_seconds <= 3600.0, buf);
}

void golden_worked_example() {
  Check c;

  CotmConfig cfg;
  cfg.num_clauses = 8;
  cfg.num_classes = 2;
  cfg.threshold = 100;
  cfg.seed = 1;
  ClauseBank bank = ClauseBank::from_included_literals(
      12, 8, 127, 50, {{0}, {1}, {2}, {3}, {4}, {5}, {9}, {10}});
  std::vector<std::int32_t> weights(16, 0);
  const std::int32_t class0[8] = {10, 20, 50, 80, 23, 1, 1, 45};
  for (std::size_t t = 0; t < 8; ++t) weights[t * 2] = class0[t];
  CotmModel model(cfg, std::move(bank), std::move(weights));

  const Hypervector x = Hypervector::from_bits({1, 1, 1, 1, 1, 1, 0, 0, 0, 1, 1, 0});
  c.require(model.predict(x) == 0, "prediction");

  const auto active = model.active_clauses(x, 0);
  const VoteVector votes = aggregate_literal_votes(model.bank(), active);
  c.require(votes.counts() ==
                std::vector<std::uint32_t>{10, 20, 50, 80, 23, 1, 0, 0, 0, 1, 45, 0},
            "vote vector mismatch");

  const Hypervector v_pred = binarize_votes(votes, 1.0 / 3.0);
  c.require(v_pred == Hypervector::from_bits({0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1, 0}),
            "binarized prediction vector mismatch (want bits {2,3,4,10})");

  const std::vector<Hypervector> roles{
      Hypervector::from_bits({0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 1, 0}),
      Hypervector::from_bits({0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1}),
      Hypervector::from_bits({0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1, 0}),
  };
  const auto [distances, winner] = nearest_candidate(roles, v_pred);
  // The first distance is asserted as 2: recomputing from the printed role
  // vectors yields 2 even though the prose alongside them says 3.
  c.require(distances[0] == 2, "distance to first role vector (recomputed) must be 2");
  c.require(distances[1] == 6, "distance to second role vector must be 6");
  c.require(distances[2] == 0, "distance to third role vector must be 0");
  c.require(winner == 2, "winner must be the third node");

  report("golden_worked_example", c.ok, c.detail);
}

void hypervector_properties() {
  Check c;
  Rng rng(0xACCE97);
  const std::size_t cases = 10000;

  for (std::size_t i = 0; i < cases && c.ok; ++i) {
    const std::size_t dim = 64 + rng.next_below(193);
    const std::size_t k = 1 + rng.next_below(dim / 2);
    const Hypervector a = Hypervector::random_sparse(dim, k, rng);
    const Hypervector b = Hypervector::random_sparse(dim, k, rng);
    const Hypervector d = Hypervector::random_sparse(dim, k, rng);
    c.require(bind(bind(a, b), b) == a, "bind invertibility");
    c.require(bind(a, b) == bind(b, a), "bind commutativity");
    c.require(bind(bind(a, b), d) == bind(a, bind(b, d)), "bind associativity");
  }

  for (std::size_t i = 0; i < cases && c.ok; ++i) {
    const std::size_t dim = 64 + rng.next_below(193);
    const std::size_t k = 1 + rng.next_below(dim / 2);
    const Hypervector a = Hypervector::random_sparse(dim, k, rng);
    const Hypervector b = Hypervector::random_sparse(dim, k, rng);
    const Hypervector d = Hypervector::random_sparse(dim, k, rng);
    const std::size_t ab = hamming(a, b);
    c.require(ab == hamming(b, a), "hamming symmetry");
    c.require((ab == 0) == (a == b), "hamming identity");
    c.require(ab <= hamming(a, d) + hamming(d, b), "hamming triangle inequality");
  }

  for (std::size_t i = 0; i < cases && c.ok; ++i) {
    const std::size_t dim = 32 + rng.next_below(225);
    const std::size_t k = 1 + rng.next_below(dim);
    VoteVector votes(dim);
    const std::size_t n_inputs = 1 + rng.next_below(8);
    for (std::size_t m = 0; m < n_inputs; ++m) {
      votes.accumulate(Hypervector::random_sparse(dim, 1 + rng.next_below(dim / 2), rng),
                       1 + static_cast<std::uint32_t>(rng.next_below(4)));
    }
    const Hypervector bundled = votes.bundle(k);
    c.require(bundled.popcount() == k, "bundle popcount == k");
    c.require(bundled == votes.bundle(k), "bundle determinism");
    if (i % 100 == 0) {
      const auto expect = oracle::top_k_positions(votes.counts(), k);
      Hypervector manual(dim);
      for (std::size_t pos : expect) manual.set(pos);
      c.require(bundled == manual, "bundle tie rule vs sort oracle");
    }
  }

  report("hypervector_properties", c.ok,
         c.ok ? "10000 randomized cases per property, zero failures" : c.detail);
}

void linear_locality() {
  Check c;
  const std::size_t dim = 6400, k = 1280;
  std::vector<double> mean_by_gap(11, 0.0);
  for (std::uint64_t seed = 0; seed < 20 && c.ok; ++seed) {
    LinearCodebook book(0.0, 1.0, 100, 0.02, 0.005, dim, k, seed);
    const std::size_t s = book.flip_count();
    c.require(s == 32, "flip count should be 32 at the default rates");
    for (std::size_t i = 0; i + 1 < book.num_levels() && c.ok; ++i) {
      c.require(hamming(book.level(i), book.level(i + 1)) == 2 * s,
                "consecutive levels must differ in exactly 2*S bits");
    }
    for (std::size_t gap = 1; gap <= 10; ++gap) {
      double total = 0.0;
      std::size_t pairs = 0;
      for (std::size_t i = 0; i + gap < book.num_levels(); ++i) {
        total += static_cast<double>(hamming(book.level(i), book.level(i + gap)));
        ++pairs;
      }
      mean_by_gap[gap] += total / static_cast<double>(pairs) / 20.0;
    }
  }
  for (std::size_t gap = 2; gap <= 10 && c.ok; ++gap) {
    c.require(mean_by_gap[gap] > mean_by_gap[gap - 1],
              "mean distance must increase strictly with the level gap");
  }
  report("linear_locality", c.ok,
         c.ok ? "exact 2*S steps over 20 seeds; mean distance strictly increasing "
                "for gaps 1..10"
              : c.detail);
}

void cotm_oracle() {
  Check c;
  Rng rng(0xC07A);
  int models = 0;
  for (int trial = 0; trial < 500 && c.ok; ++trial) {
    const std::size_t dim = 4 + rng.next_below(29);      // <= 32
    const std::size_t clauses = 1 + rng.next_below(16);  // <= 16
    const std::size_t classes = 1 + rng.next_below(3);   // <= 3
    CotmConfig cfg;
    cfg.num_clauses = clauses;
    cfg.num_classes = classes;
    cfg.threshold = 16;
    cfg.seed = trial;

    CotmModel model(cfg, dim);
    for (std::size_t t = 0; t < clauses; ++t) {
      for (std::size_t lit = 0; lit < 2 * dim; ++lit) {
        model.bank().set_state(t, lit, static_cast<std::uint8_t>(1 + rng.next_below(254)));
      }
      for (std::size_t y = 0; y < classes; ++y) {
        model.set_weight(t, y, static_cast<std::int32_t>(rng.next_below(17)) - 8);
      }
    }
    ++models;

    for (int probe = 0; probe < 4 && c.ok; ++probe) {
      Hypervector x(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        if (rng.next_below(2)) x.set(j);
      }
      for (bool training : {false, true}) {
        c.require(model.class_sums(x, training) ==
                      oracle::class_sums_bruteforce(model, x, training),
                  "class sums diverge from the exhaustive evaluator");
      }
      const auto sums = oracle::class_sums_bruteforce(model, x, false);
      std::size_t best = 0;
      for (std::size_t y = 1; y < classes; ++y) {
        if (sums[y] > sums[best]) best = y;
      }
      c.require(model.predict(x) == best, "prediction diverges from the oracle argmax");
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d random models, exact agreement", models);
  report("cotm_oracle", c.ok, c.ok ? buf : c.detail);
}

Hypervector xor_all(const std::vector<Hypervector>& factors) {
  Hypervector out(factors.front().dim());
  for (std::size_t j = 0; j < out.dim(); ++j) {
    int parity = 0;
    for (const auto& f : factors) parity ^= f.test(j);
    if (parity) out.set(j);
  }
  return out;
}

void encoder_oracles() {
  Check c;

  // D = 12 toy codebook with labels, edge labels and one edge attribute.
  EncoderConfig cfg;
  cfg.dim = 12;
  cfg.sparsity = 1.0 / 3.0;
  cfg.rank_levels = 4;
  cfg.attr_levels = 8;
  cfg.alpha = 0.2;
  cfg.beta = 0.05;
  cfg.seed = 77;
  FeatureManifest manifest;
  manifest.node_labels = true;
  manifest.edge_labels = true;
  manifest.edge_attributes = true;
  manifest.edge_attr_dim = 1;
  AttributeBounds bounds;
  bounds.edge_attr = {{0.0, 1.0}};

  AttributedGraph g;
  g.nodes.resize(3);
  g.nodes[0].label = 5;
  g.nodes[1].label = 6;
  g.nodes[2].label = 5;
  g.edges.push_back({0, 1, 2, {0.25}});
  g.edges.push_back({1, 2, 3, {0.75}});
  rank_by_pagerank(g);

  const CodebookSet books = CodebookSet::build(cfg, manifest, bounds);
  auto bucket = [&](std::size_t v) {
    return rank_bucket(g.nodes[v].rank, g.nodes.size(), books.rank_levels());
  };

  for (std::size_t v = 0; v < 3 && c.ok; ++v) {
    c.require(encode_node(g, v, books) ==
                  xor_all({books.node_label(*g.nodes[v].label),
                           books.rank_vector(bucket(v))}),
              "node encoding differs from the hand XOR chain");
  }
  for (std::size_t e = 0; e < 2 && c.ok; ++e) {
    const EdgeRecord& rec = g.edges[e];
    c.require(encode_message(g, e, books) ==
                  xor_all({encode_node(g, rec.source, books),
                           books.edge_label(*rec.label),
                           books.edge_attributes(rec.attributes),
                           books.edge_role(bucket(rec.source), bucket(rec.target)),
                           encode_node(g, rec.target, books),
                           books.rank_vector(bucket(rec.source))}),
              "message differs from the hand XOR chain");
  }

  {
    EncoderConfig cfg3 = cfg;
    cfg3.layers = 3;
    const EncodedGraph enc = encode_graph(g, cfg3, books);
    std::size_t hop3 = 0;
    Hypervector stored;
    for (const auto& p : enc.provenance) {
      if (p.depth == 3) {
        ++hop3;
        stored = p.message;
      }
    }
    c.require(hop3 == 1, "path graph must emit exactly one second-hop message");
    if (c.ok) {
      c.require(stored == xor_all({encode_message(g, 0, books),
                                   books.edge_label(*g.edges[1].label),
                                   books.edge_role(bucket(1), bucket(2)),
                                   encode_node(g, 2, books)}),
                "second-hop message differs from the hand XOR chain");
    }
  }

  // Isomorphic relabeling with identical features must encode identically.
  {
    EncoderConfig big = cfg;
    big.dim = 640;
    big.sparsity = 0.2;
    FeatureManifest labels_only;
    labels_only.node_labels = true;

    AttributedGraph chain;
    chain.nodes.resize(4);
    for (std::size_t v = 0; v < 4; ++v) chain.nodes[v].label = static_cast<std::int64_t>(v);
    chain.edges.push_back({0, 1, std::nullopt, {}});
    chain.edges.push_back({1, 2, std::nullopt, {}});
    chain.edges.push_back({2, 3, std::nullopt, {}});
    rank_by_pagerank(chain);

    const std::size_t perm[4] = {2, 0, 3, 1};
    AttributedGraph twin;
    twin.nodes.resize(4);
    for (std::size_t v = 0; v < 4; ++v) twin.nodes[perm[v]] = chain.nodes[v];
    for (const EdgeRecord& e : chain.edges) {
      twin.edges.push_back({perm[e.source], perm[e.target], e.label, e.attributes});
    }
    rank_by_pagerank(twin);

    const CodebookSet big_books = CodebookSet::build(big, labels_only, {});
    c.require(encode_graph(chain, big, big_books).vector ==
                  encode_graph(twin, big, big_books).vector,
              "isomorphic copy encoded differently");
  }

  // Deleting one edge must change the encoding in >= 99 of 100 seeds.
  {
    FeatureManifest labels_only;
    labels_only.node_labels = true;
    AttributedGraph base;
    base.nodes.resize(6);
    for (std::size_t v = 0; v < 6; ++v) base.nodes[v].label = static_cast<std::int64_t>(v % 3);
    const std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4},
                                                    {4, 5}, {5, 0}, {1, 4}, {2, 5}};
    for (auto [a, b] : edges) {
      base.edges.push_back({static_cast<std::size_t>(a), static_cast<std::size_t>(b),
                            std::nullopt, {}});
    }
    rank_by_pagerank(base);
    AttributedGraph pruned = base;
    pruned.edges.erase(pruned.edges.begin() + 6);
    rank_by_pagerank(pruned);

    int changed = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      EncoderConfig ecfg;
      ecfg.dim = 640;
      ecfg.sparsity = 0.2;
      ecfg.seed = seed;
      const CodebookSet books_s = CodebookSet::build(ecfg, labels_only, {});
      if (encode_graph(base, ecfg, books_s).vector !=
          encode_graph(pruned, ecfg, books_s).vector) {
        ++changed;
      }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "edge deletion changed %d/100 encodings", changed);
    c.require(changed >= 99, buf);
  }

  report("encoder_oracles", c.ok,
         c.ok ? "hand XOR chains, isomorphic equality, edge-deletion sensitivity"
              : c.detail);
}

void pagerank_oracle() {
  Check c;

  {
    AttributedGraph g;
    g.nodes.resize(4);
    for (double score : pagerank(g)) c.require(score == 0.25, "edgeless graph not uniform");
    AttributedGraph cyc;
    cyc.nodes.resize(3);
    cyc.edges.push_back({0, 1, std::nullopt, {}});
    cyc.edges.push_back({1, 2, std::nullopt, {}});
    cyc.edges.push_back({2, 0, std::nullopt, {}});
    const auto scores = pagerank(cyc);
    c.require(scores[0] == scores[1] && scores[1] == scores[2],
              "cycle scores must be exactly equal");
  }

  Rng rng(0x9A6E);
  for (int trial = 0; trial < 100 && c.ok; ++trial) {
    const std::size_t n = 2 + rng.next_below(19);
    AttributedGraph g;
    g.nodes.resize(n);
    const std::size_t m = rng.next_below(3 * n);
    for (std::size_t e = 0; e < m; ++e) {
      g.edges.push_back({rng.next_below(n), rng.next_below(n), std::nullopt, {}});
    }
    const auto scores = pagerank(g);
    const auto expect = oracle::pagerank_dense(g, 0.85, 200);
    double sum = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      c.require(std::abs(scores[v] - expect[v]) < 1e-8,
                "power-iteration disagreement beyond 1e-8");
      sum += scores[v];
    }
    c.require(std::abs(sum - 1.0) < 1e-9, "scores must sum to 1");
  }
  report("pagerank_oracle", c.ok,
         c.ok ? "100 random graphs within 1e-8 of the dense oracle; symmetric cases exact"
              : c.detail);
}

bool corpora_equal(const TuCorpus& a, const TuCorpus& b) {
  if (a.name != b.name || a.num_classes != b.num_classes ||
      a.class_labels != b.class_labels || a.graphs.size() != b.graphs.size()) {
    return false;
  }
  for (std::size_t g = 0; g < a.graphs.size(); ++g) {
    const auto& ga = a.graphs[g];
    const auto& gb = b.graphs[g];
    if (ga.label != gb.label || ga.nodes.size() != gb.nodes.size() ||
        ga.edges.size() != gb.edges.size()) {
      return false;
    }
    for (std::size_t v = 0; v < ga.nodes.size(); ++v) {
      if (ga.nodes[v].label != gb.nodes[v].label ||
          ga.nodes[v].attributes != gb.nodes[v].attributes) {
        return false;
      }
    }
    for (std::size_t e = 0; e < ga.edges.size(); ++e) {
      if (ga.edges[e].source != gb.edges[e].source ||
          ga.edges[e].target != gb.edges[e].target ||
          ga.edges[e].label != gb.edges[e].label ||
          ga.edges[e].attributes != gb.edges[e].attributes) {
        return false;
      }
    }
  }
  return true;
}

void tu_roundtrip(const fs::path& data_dir) {
  Check c;
  const fs::path tmp = fs::temp_directory_path() / "hvg_acceptance_tu";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  // Adversarial synthetic fixture: mixed separators, missing reverse edge.
  {
    const fs::path dir = tmp / "src";
    fs::create_directories(dir);
    std::ofstream(dir / "ADV_A.txt") << "1,2\n2, 1\n3, 4\n4, 5\n5, 4\n";
    std::ofstream(dir / "ADV_graph_indicator.txt") << "1\n1\n2\n2\n2\n";
    std::ofstream(dir / "ADV_graph_labels.txt") << "7\n-3\n";
    std::ofstream(dir / "ADV_node_labels.txt") << "1\n2\n3\n1\n2\n";
    std::ofstream(dir / "ADV_edge_labels.txt") << "0\n0\n1\n2\n2\n";
    std::ofstream(dir / "ADV_edge_attributes.txt") << "1.5\n1.5\n0.25\n0.125\n0.125\n";

    const TuCorpus first = load_tu_dataset(dir, "ADV");
    c.require(first.repaired_edges == 1, "missing reverse edge must be repaired");
    save_tu_dataset(first, tmp / "adv_round");
    const TuCorpus second = load_tu_dataset(tmp / "adv_round", "ADV");
    c.require(corpora_equal(first, second), "adversarial fixture did not round-trip");
  }

  const fs::path mutag = data_dir / "MUTAG";
  if (fs::exists(mutag / "MUTAG_A.txt")) {
    const TuCorpus first = load_tu_dataset(mutag, "MUTAG");
    c.require(first.graphs.size() == 188, "MUTAG must contain 188 graphs");
    save_tu_dataset(first, tmp / "mutag_round");
    const TuCorpus second = load_tu_dataset(tmp / "mutag_round", "MUTAG");
    c.require(corpora_equal(first, second), "MUTAG did not round-trip");
  } else {
    c.require(false, "MUTAG dataset missing");
  }

  fs::remove_all(tmp);
  report("tu_roundtrip", c.ok,
         c.ok ? "MUTAG and adversarial fixtures parse -> serialize -> parse identically"
              : c.detail);
}

}  // namespace

int main(int argc, char** argv) {
  fs::path data_dir = "data";
  int jobs = 2;
  bool quick = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--data-dir") && i + 1 < argc) {
      data_dir = argv[++i];
    } else if (!std::strcmp(argv[i], "--jobs") && i + 1 < argc) {
      jobs = std::atoi(argv[++i]);
    } else if (!std::strcmp(argv[i], "--quick")) {
      quick = true;
    } else if (!std::strcmp(argv[i], "--fixture-dir") && i + 1 < argc) {
      ++i;  // fixtures are synthesized in a temp dir; flag kept for symmetry
    }
  }

  golden_worked_example();
  hypervector_properties();
  linear_locality();
  cotm_oracle();
  encoder_oracles();
  pagerank_oracle();
  tu_roundtrip(data_dir);
  if (quick) {
    skip("mutag_reproduction", "--quick");
    skip("aids_smoke", "--quick");
  } else {
    mutag_reproduction(data_dir, jobs);
    aids_smoke(data_dir, jobs);
  }

  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
