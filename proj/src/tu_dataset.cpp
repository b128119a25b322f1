#include "hvg/tu_dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>

#include "hvg/rng.hpp"

namespace hvg {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void format_error(const fs::path& file, std::size_t line,
                               const std::string& what) {
  throw TuFormatError(file.filename().string() + ":" + std::to_string(line) + ": " + what);
}

// Non-empty, whitespace-trimmed lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> read_lines(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw TuLoadError("cannot open " + file.string());
  std::vector<std::pair<std::size_t, std::string>> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    out.emplace_back(number, line.substr(begin, end - begin + 1));
  }
  return out;
}

std::int64_t parse_int(const fs::path& file, std::size_t line, std::string_view text) {
  std::int64_t value = 0;
  // Labels in the wild sometimes come as "1.0"; accept a trailing ".0".
  const auto dot = text.find('.');
  std::string_view head = dot == std::string_view::npos ? text : text.substr(0, dot);
  if (dot != std::string_view::npos) {
    for (char c : text.substr(dot + 1)) {
      if (c != '0') format_error(file, line, "expected integer, got '" + std::string(text) + "'");
    }
  }
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), value);
  if (ec != std::errc{} || ptr != head.data() + head.size()) {
    format_error(file, line, "expected integer, got '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(const fs::path& file, std::size_t line, std::string_view text) {
  try {
    std::size_t used = 0;
    double v = std::stod(std::string(text), &used);
    if (used != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    format_error(file, line, "expected real number, got '" + std::string(text) + "'");
  }
}

// Splits on commas, tolerating both "a,b" and "a, b".
std::vector<std::string_view> split_csv(std::string_view text,
                                        std::vector<std::string>& storage) {
  storage.clear();
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    std::string_view field = text.substr(pos, comma - pos);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
      field.remove_prefix(1);
    }
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) {
      field.remove_suffix(1);
    }
    storage.emplace_back(field);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  std::vector<std::string_view> views;
  views.reserve(storage.size());
  for (const auto& s : storage) views.emplace_back(s);
  return views;
}

}  // namespace

TuCorpus load_tu_dataset(const fs::path& dir, const std::string& name) {
  const fs::path base = dir / name;
  auto file_of = [&](const char* suffix) { return fs::path(base.string() + suffix); };

  for (const char* mandatory : {"_A.txt", "_graph_indicator.txt", "_graph_labels.txt"}) {
    if (!fs::exists(file_of(mandatory))) {
      throw TuLoadError("missing mandatory file " + file_of(mandatory).string());
    }
  }

  TuCorpus corpus;
  corpus.name = name;

  // Graph membership of every (1-based) global node id.
  const fs::path indicator_file = file_of("_graph_indicator.txt");
  std::vector<std::size_t> node_graph;  // 0-based graph index per node
  std::size_t num_graphs = 0;
  for (const auto& [line, text] : read_lines(indicator_file)) {
    const std::int64_t gid = parse_int(indicator_file, line, text);
    if (gid < 1) format_error(indicator_file, line, "graph id must be >= 1");
    const auto g = static_cast<std::size_t>(gid - 1);
    if (g + 1 < num_graphs) {
      format_error(indicator_file, line, "graph ids must be non-decreasing");
    }
    num_graphs = std::max(num_graphs, g + 1);
    node_graph.push_back(g);
  }
  if (node_graph.empty()) throw TuLoadError("empty graph indicator in " + indicator_file.string());

  corpus.graphs.resize(num_graphs);

  // Rebase node ids per graph.
  std::vector<std::size_t> local_id(node_graph.size());
  {
    std::vector<std::size_t> counts(num_graphs, 0);
    for (std::size_t v = 0; v < node_graph.size(); ++v) {
      local_id[v] = counts[node_graph[v]]++;
    }
    for (std::size_t g = 0; g < num_graphs; ++g) {
      if (counts[g] == 0) {
        throw TuFormatError(indicator_file.filename().string() + ": graph " +
                            std::to_string(g + 1) + " has no nodes");
      }
      corpus.graphs[g].nodes.resize(counts[g]);
    }
  }

  // Graph labels, remapped to 0..K-1 preserving sorted original order.
  const fs::path labels_file = file_of("_graph_labels.txt");
  {
    std::vector<std::int64_t> raw;
    for (const auto& [line, text] : read_lines(labels_file)) {
      raw.push_back(parse_int(labels_file, line, text));
    }
    if (raw.size() != num_graphs) {
      throw TuFormatError(labels_file.filename().string() + ": expected " +
                          std::to_string(num_graphs) + " labels, got " +
                          std::to_string(raw.size()));
    }
    corpus.class_labels = raw;
    std::sort(corpus.class_labels.begin(), corpus.class_labels.end());
    corpus.class_labels.erase(
        std::unique(corpus.class_labels.begin(), corpus.class_labels.end()),
        corpus.class_labels.end());
    corpus.num_classes = corpus.class_labels.size();
    for (std::size_t g = 0; g < num_graphs; ++g) {
      const auto it = std::lower_bound(corpus.class_labels.begin(),
                                       corpus.class_labels.end(), raw[g]);
      corpus.graphs[g].label = static_cast<int>(it - corpus.class_labels.begin());
    }
  }

  // Optional node labels / attributes.
  if (fs::exists(file_of("_node_labels.txt"))) {
    corpus.manifest.node_labels = true;
    const fs::path f = file_of("_node_labels.txt");
    std::size_t v = 0;
    for (const auto& [line, text] : read_lines(f)) {
      if (v >= node_graph.size()) format_error(f, line, "more node labels than nodes");
      corpus.graphs[node_graph[v]].nodes[local_id[v]].label = parse_int(f, line, text);
      ++v;
    }
    if (v != node_graph.size()) {
      throw TuFormatError(f.filename().string() + ": expected " +
                          std::to_string(node_graph.size()) + " labels, got " +
                          std::to_string(v));
    }
  }
  if (fs::exists(file_of("_node_attributes.txt"))) {
    corpus.manifest.node_attributes = true;
    const fs::path f = file_of("_node_attributes.txt");
    std::vector<std::string> storage;
    std::size_t v = 0;
    for (const auto& [line, text] : read_lines(f)) {
      if (v >= node_graph.size()) format_error(f, line, "more attribute rows than nodes");
      std::vector<double> attrs;
      for (std::string_view field : split_csv(text, storage)) {
        attrs.push_back(parse_real(f, line, field));
      }
      if (corpus.manifest.node_attr_dim == 0) {
        corpus.manifest.node_attr_dim = attrs.size();
      } else if (attrs.size() != corpus.manifest.node_attr_dim) {
        format_error(f, line, "attribute arity changed from " +
                                  std::to_string(corpus.manifest.node_attr_dim) + " to " +
                                  std::to_string(attrs.size()));
      }
      corpus.graphs[node_graph[v]].nodes[local_id[v]].attributes = std::move(attrs);
      ++v;
    }
    if (v != node_graph.size()) {
      throw TuFormatError(f.filename().string() + ": expected " +
                          std::to_string(node_graph.size()) + " rows, got " +
                          std::to_string(v));
    }
  }

  // Edges plus optional labels / attributes, then per-graph symmetrization.
  const fs::path edge_file = file_of("_A.txt");
  const bool has_edge_labels = fs::exists(file_of("_edge_labels.txt"));
  const bool has_edge_attrs = fs::exists(file_of("_edge_attributes.txt"));
  corpus.manifest.edge_labels = has_edge_labels;
  corpus.manifest.edge_attributes = has_edge_attrs;

  std::vector<std::pair<std::size_t, std::string>> edge_lines = read_lines(edge_file);
  std::vector<std::pair<std::size_t, std::string>> label_lines, attr_lines;
  if (has_edge_labels) {
    label_lines = read_lines(file_of("_edge_labels.txt"));
    if (label_lines.size() != edge_lines.size()) {
      throw TuFormatError(name + "_edge_labels.txt: expected " +
                          std::to_string(edge_lines.size()) + " lines, got " +
                          std::to_string(label_lines.size()));
    }
  }
  if (has_edge_attrs) {
    attr_lines = read_lines(file_of("_edge_attributes.txt"));
    if (attr_lines.size() != edge_lines.size()) {
      throw TuFormatError(name + "_edge_attributes.txt: expected " +
                          std::to_string(edge_lines.size()) + " lines, got " +
                          std::to_string(attr_lines.size()));
    }
  }

  std::vector<std::string> storage;
  for (std::size_t i = 0; i < edge_lines.size(); ++i) {
    const auto& [line, text] = edge_lines[i];
    const auto fields = split_csv(text, storage);
    if (fields.size() != 2) format_error(edge_file, line, "expected 'i, j'");
    const std::int64_t a = parse_int(edge_file, line, fields[0]);
    const std::int64_t b = parse_int(edge_file, line, fields[1]);
    if (a < 1 || b < 1 || static_cast<std::size_t>(a) > node_graph.size() ||
        static_cast<std::size_t>(b) > node_graph.size()) {
      format_error(edge_file, line, "node id out of range");
    }
    const std::size_t src = static_cast<std::size_t>(a) - 1;
    const std::size_t dst = static_cast<std::size_t>(b) - 1;
    if (node_graph[src] != node_graph[dst]) {
      format_error(edge_file, line, "edge crosses graph boundary");
    }

    EdgeRecord e;
    e.source = local_id[src];
    e.target = local_id[dst];
    if (has_edge_labels) {
      e.label = parse_int(file_of("_edge_labels.txt"), label_lines[i].first,
                          label_lines[i].second);
    }
    if (has_edge_attrs) {
      const auto& [aline, atext] = attr_lines[i];
      for (std::string_view field : split_csv(atext, storage)) {
        e.attributes.push_back(parse_real(file_of("_edge_attributes.txt"), aline, field));
      }
      if (corpus.manifest.edge_attr_dim == 0) {
        corpus.manifest.edge_attr_dim = e.attributes.size();
      } else if (e.attributes.size() != corpus.manifest.edge_attr_dim) {
        format_error(file_of("_edge_attributes.txt"), aline, "attribute arity changed");
      }
    }
    corpus.graphs[node_graph[src]].edges.push_back(std::move(e));
  }

  // TU stores undirected edges as both directions; repair any missing
  // reverse so information flows symmetrically.
  for (std::size_t g = 0; g < num_graphs; ++g) {
    auto& graph = corpus.graphs[g];
    std::map<std::pair<std::size_t, std::size_t>, int> balance;
    for (const EdgeRecord& e : graph.edges) {
      if (e.source == e.target) continue;  // self-loops need no reverse
      auto key = std::minmax(e.source, e.target);
      balance[key] += e.source < e.target ? 1 : -1;
    }
    std::vector<EdgeRecord> missing;
    for (const EdgeRecord& e : graph.edges) {
      if (e.source == e.target) continue;
      auto key = std::minmax(e.source, e.target);
      int& bal = balance[key];
      if (bal == 0) continue;
      if ((bal > 0) == (e.source < e.target)) {
        EdgeRecord rev = e;
        std::swap(rev.source, rev.target);
        missing.push_back(std::move(rev));
        bal += e.source < e.target ? -1 : 1;
      }
    }
    if (!missing.empty()) {
      corpus.repaired_edges += missing.size();
      for (auto& e : missing) graph.edges.push_back(std::move(e));
    }
  }
  if (corpus.repaired_edges > 0) {
    std::cerr << "warning: " << name << ": added " << corpus.repaired_edges
              << " missing reverse edge(s) during symmetrization\n";
  }

  return corpus;
}

void save_tu_dataset(const TuCorpus& corpus, const fs::path& dir) {
  fs::create_directories(dir);
  const fs::path base = dir / corpus.name;
  auto open = [&](const char* suffix) {
    std::ofstream out(fs::path(base.string() + suffix));
    if (!out) throw TuLoadError("cannot write " + base.string() + suffix);
    return out;
  };

  std::ofstream a = open("_A.txt");
  std::ofstream indicator = open("_graph_indicator.txt");
  std::ofstream glabels = open("_graph_labels.txt");
  std::ofstream nlabels, nattrs, elabels, eattrs;
  if (corpus.manifest.node_labels) nlabels = open("_node_labels.txt");
  if (corpus.manifest.node_attributes) nattrs = open("_node_attributes.txt");
  if (corpus.manifest.edge_labels) elabels = open("_edge_labels.txt");
  if (corpus.manifest.edge_attributes) eattrs = open("_edge_attributes.txt");

  char buf[64];
  auto real_str = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };

  std::size_t node_base = 0;
  for (std::size_t g = 0; g < corpus.graphs.size(); ++g) {
    const AttributedGraph& graph = corpus.graphs[g];
    glabels << corpus.class_labels.at(static_cast<std::size_t>(graph.label)) << "\n";
    for (const NodeRecord& node : graph.nodes) {
      indicator << (g + 1) << "\n";
      if (corpus.manifest.node_labels) nlabels << node.label.value_or(0) << "\n";
      if (corpus.manifest.node_attributes) {
        for (std::size_t j = 0; j < node.attributes.size(); ++j) {
          nattrs << (j ? ", " : "") << real_str(node.attributes[j]);
        }
        nattrs << "\n";
      }
    }
    for (const EdgeRecord& e : graph.edges) {
      a << (node_base + e.source + 1) << ", " << (node_base + e.target + 1) << "\n";
      if (corpus.manifest.edge_labels) elabels << e.label.value_or(0) << "\n";
      if (corpus.manifest.edge_attributes) {
        for (std::size_t j = 0; j < e.attributes.size(); ++j) {
          eattrs << (j ? ", " : "") << real_str(e.attributes[j]);
        }
        eattrs << "\n";
      }
    }
    node_base += graph.nodes.size();
  }
}

SplitIndices split_corpus(std::size_t corpus_size, double train_fraction,
                          std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("split_corpus: train_fraction must be in (0, 1)");
  }
  const auto n_train = static_cast<std::size_t>(
      static_cast<double>(corpus_size) * train_fraction);
  if (n_train == 0 || n_train == corpus_size) {
    throw std::invalid_argument("split_corpus: corpus too small for a non-empty split");
  }
  std::vector<std::size_t> order(corpus_size);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = corpus_size; i > 1; --i) {
    std::swap(order[i - 1], order[rng.next_below(i)]);
  }
  SplitIndices split;
  split.train.assign(order.begin(), order.begin() + n_train);
  split.test.assign(order.begin() + n_train, order.end());
  return split;
}

SplitIndices split_corpus_stratified(const TuCorpus& corpus, double train_fraction,
                                     std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("split_corpus_stratified: train_fraction must be in (0, 1)");
  }
  std::vector<std::vector<std::size_t>> by_class(corpus.num_classes);
  for (std::size_t g = 0; g < corpus.graphs.size(); ++g) {
    by_class.at(static_cast<std::size_t>(corpus.graphs[g].label)).push_back(g);
  }
  Rng rng(seed);
  SplitIndices split;
  for (auto& members : by_class) {
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[rng.next_below(i)]);
    }
    const auto n_train = static_cast<std::size_t>(
        static_cast<double>(members.size()) * train_fraction);
    split.train.insert(split.train.end(), members.begin(), members.begin() + n_train);
    split.test.insert(split.test.end(), members.begin() + n_train, members.end());
  }
  if (split.train.empty() || split.test.empty()) {
    throw std::invalid_argument("split_corpus_stratified: corpus too small");
  }
  return split;
}

AttributeBounds compute_bounds(const TuCorpus& corpus,
                               const std::vector<std::size_t>& graph_indices) {
  AttributeBounds bounds;
  auto widen = [](std::vector<std::pair<double, double>>& dst,
                  const std::vector<double>& values) {
    if (dst.empty()) {
      dst.assign(values.size(),
                 {std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()});
    }
    for (std::size_t j = 0; j < values.size() && j < dst.size(); ++j) {
      dst[j].first = std::min(dst[j].first, values[j]);
      dst[j].second = std::max(dst[j].second, values[j]);
    }
  };
  for (std::size_t g : graph_indices) {
    const AttributedGraph& graph = corpus.graphs.at(g);
    if (corpus.manifest.node_attributes) {
      for (const NodeRecord& node : graph.nodes) widen(bounds.node_attr, node.attributes);
    }
    if (corpus.manifest.edge_attributes) {
      for (const EdgeRecord& e : graph.edges) widen(bounds.edge_attr, e.attributes);
    }
  }
  return bounds;
}

}  // namespace hvg
