#include "hvg/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace hvg {

namespace {

constexpr char kMagic[4] = {'H', 'V', 'G', 'M'};
constexpr std::uint8_t kVersion = 1;

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
  }
  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
  void u32(std::uint32_t v) { put_le(v); }
  void u64(std::uint64_t v) { put_le(v); }
  void i32(std::int32_t v) { put_le(static_cast<std::uint32_t>(v)); }
  void i64(std::int64_t v) { put_le(static_cast<std::uint64_t>(v)); }
  void f64(double v) { put_le(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  void bytes(const std::uint8_t* data, std::size_t n) {
    out_.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n));
  }
  bool good() const { return out_.good(); }

 private:
  template <typename T>
  void put_le(T v) {
    char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    }
    out_.write(buf, sizeof(T));
  }
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path) : in_(path, std::ios::binary) {
    if (!in_) throw std::runtime_error("cannot read " + path.string());
  }
  std::uint8_t u8() {
    int c = in_.get();
    if (c == EOF) fail();
    return static_cast<std::uint8_t>(c);
  }
  std::uint32_t u32() { return get_le<std::uint32_t>(); }
  std::uint64_t u64() { return get_le<std::uint64_t>(); }
  std::int32_t i32() { return static_cast<std::int32_t>(get_le<std::uint32_t>()); }
  std::int64_t i64() { return static_cast<std::int64_t>(get_le<std::uint64_t>()); }
  double f64() { return std::bit_cast<double>(get_le<std::uint64_t>()); }
  std::string str() {
    std::string s(u32(), '\0');
    in_.read(s.data(), static_cast<std::streamsize>(s.size()));
    if (!in_) fail();
    return s;
  }
  void bytes(std::uint8_t* data, std::size_t n) {
    in_.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(n));
    if (!in_) fail();
  }

 private:
  [[noreturn]] static void fail() { throw std::runtime_error("model file truncated"); }
  template <typename T>
  T get_le() {
    char buf[sizeof(T)];
    in_.read(buf, sizeof(T));
    if (!in_) fail();
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<T>(static_cast<unsigned char>(buf[i])) << (8 * i);
    }
    return v;
  }
  std::ifstream in_;
};

}  // namespace

ModelArtifact make_artifact(const CotmModel& model, const CodebookSet& books,
                            const std::string& dataset,
                            const std::vector<std::int64_t>& class_labels) {
  ModelArtifact a;
  a.encoder = books.config();
  a.manifest = books.manifest();
  a.bounds = books.bounds();
  a.cotm = model.config();
  a.dataset = dataset;
  a.class_labels = class_labels;
  a.states.assign(model.bank().states().begin(), model.bank().states().end());
  a.weights.assign(model.weights().begin(), model.weights().end());
  return a;
}

void save_model(const std::filesystem::path& path, const ModelArtifact& a) {
  Writer w(path);
  w.bytes(reinterpret_cast<const std::uint8_t*>(kMagic), 4);
  w.u8(kVersion);

  w.u64(a.encoder.seed);
  w.u32(static_cast<std::uint32_t>(a.encoder.dim));
  w.f64(a.encoder.sparsity);
  w.u8(static_cast<std::uint8_t>(a.encoder.layers));
  w.u8(a.encoder.weighting == WeightingMode::kRankWeighted ? 1 : 0);
  w.u32(static_cast<std::uint32_t>(a.encoder.attr_levels));
  w.u32(static_cast<std::uint32_t>(a.encoder.rank_levels));
  w.f64(a.encoder.alpha);
  w.f64(a.encoder.beta);

  w.u8(a.manifest.node_labels);
  w.u8(a.manifest.node_attributes);
  w.u8(a.manifest.edge_labels);
  w.u8(a.manifest.edge_attributes);
  w.u32(static_cast<std::uint32_t>(a.manifest.node_attr_dim));
  w.u32(static_cast<std::uint32_t>(a.manifest.edge_attr_dim));

  w.u32(static_cast<std::uint32_t>(a.bounds.node_attr.size()));
  for (auto [lo, hi] : a.bounds.node_attr) {
    w.f64(lo);
    w.f64(hi);
  }
  w.u32(static_cast<std::uint32_t>(a.bounds.edge_attr.size()));
  for (auto [lo, hi] : a.bounds.edge_attr) {
    w.f64(lo);
    w.f64(hi);
  }

  w.u32(static_cast<std::uint32_t>(a.cotm.num_clauses));
  w.i32(a.cotm.threshold);
  w.f64(a.cotm.specificity);
  w.u32(static_cast<std::uint32_t>(a.cotm.max_literals));
  w.u32(static_cast<std::uint32_t>(a.cotm.num_classes));
  w.u8(static_cast<std::uint8_t>(a.cotm.states_per_action));
  w.u32(static_cast<std::uint32_t>(a.cotm.epochs));
  w.u8(a.cotm.boost_true_positive);
  w.u64(a.cotm.seed);

  w.str(a.dataset);
  w.u32(static_cast<std::uint32_t>(a.class_labels.size()));
  for (std::int64_t v : a.class_labels) w.i64(v);

  const std::size_t expected_states = a.cotm.num_clauses * 2 * a.encoder.dim;
  const std::size_t expected_weights = a.cotm.num_clauses * a.cotm.num_classes;
  if (a.states.size() != expected_states || a.weights.size() != expected_weights) {
    throw std::invalid_argument("save_model: state/weight array shape mismatch");
  }
  w.bytes(a.states.data(), a.states.size());
  for (std::int32_t v : a.weights) w.i32(v);
  if (!w.good()) throw std::runtime_error("save_model: write failed for " + path.string());
}

ModelArtifact load_model(const std::filesystem::path& path) {
  Reader r(path);
  char magic[4];
  r.bytes(reinterpret_cast<std::uint8_t*>(magic), 4);
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error(path.string() + ": not a model file (bad magic)");
  }
  if (const auto version = r.u8(); version != kVersion) {
    throw std::runtime_error(path.string() + ": unsupported model version " +
                             std::to_string(version));
  }

  ModelArtifact a;
  a.encoder.seed = r.u64();
  a.encoder.dim = r.u32();
  a.encoder.sparsity = r.f64();
  a.encoder.layers = r.u8();
  a.encoder.weighting = r.u8() ? WeightingMode::kRankWeighted : WeightingMode::kUniform;
  a.encoder.attr_levels = r.u32();
  a.encoder.rank_levels = r.u32();
  a.encoder.alpha = r.f64();
  a.encoder.beta = r.f64();

  a.manifest.node_labels = r.u8();
  a.manifest.node_attributes = r.u8();
  a.manifest.edge_labels = r.u8();
  a.manifest.edge_attributes = r.u8();
  a.manifest.node_attr_dim = r.u32();
  a.manifest.edge_attr_dim = r.u32();

  a.bounds.node_attr.resize(r.u32());
  for (auto& [lo, hi] : a.bounds.node_attr) {
    lo = r.f64();
    hi = r.f64();
  }
  a.bounds.edge_attr.resize(r.u32());
  for (auto& [lo, hi] : a.bounds.edge_attr) {
    lo = r.f64();
    hi = r.f64();
  }

  a.cotm.num_clauses = r.u32();
  a.cotm.threshold = r.i32();
  a.cotm.specificity = r.f64();
  a.cotm.max_literals = r.u32();
  a.cotm.num_classes = r.u32();
  a.cotm.states_per_action = r.u8();
  a.cotm.epochs = r.u32();
  a.cotm.boost_true_positive = r.u8();
  a.cotm.seed = r.u64();

  a.dataset = r.str();
  a.class_labels.resize(r.u32());
  for (auto& v : a.class_labels) v = r.i64();

  a.states.resize(a.cotm.num_clauses * 2 * a.encoder.dim);
  r.bytes(a.states.data(), a.states.size());
  a.weights.resize(a.cotm.num_clauses * a.cotm.num_classes);
  for (auto& v : a.weights) v = r.i32();
  return a;
}

CotmModel restore_model(const ModelArtifact& a) {
  ClauseBank bank(a.encoder.dim, a.cotm.num_clauses, a.cotm.states_per_action,
                  a.cotm.max_literals);
  const std::size_t n_lit = 2 * a.encoder.dim;
  for (std::size_t t = 0; t < a.cotm.num_clauses; ++t) {
    for (std::size_t lit = 0; lit < n_lit; ++lit) {
      const std::uint8_t st = a.states[t * n_lit + lit];
      if (st != bank.state(t, lit)) bank.set_state(t, lit, st);
    }
  }
  return CotmModel(a.cotm, std::move(bank), a.weights);
}

CodebookSet restore_codebooks(const ModelArtifact& a) {
  return CodebookSet::build(a.encoder, a.manifest, a.bounds);
}

}  // namespace hvg
