#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hvg/hypervector.hpp"
#include "hvg/rng.hpp"

namespace hvg {

struct CotmConfig {
  std::size_t num_clauses = 500;
  int threshold = 1000;          // vote clipping bound T
  double specificity = 2.0;      // s
  std::size_t max_literals = 50; // hard budget of included literals per clause
  std::size_t num_classes = 2;
  int states_per_action = 127;   // N; automata live in [1, 2N], include iff > N
  std::size_t epochs = 4;
  bool boost_true_positive = true;
  std::uint64_t seed = 1;
};

/// Shared bank of conjunctive clauses over the 2*dim literals of a binary
/// input (bit j and its negation). Each (clause, literal) pair carries a
/// Tsetlin automaton state; a literal is part of the conjunction while its
/// state sits in the include half. Included-literal lists are maintained
/// incrementally so evaluation touches only the (at most max_literals)
/// literals a clause actually uses.
class ClauseBank {
 public:
  ClauseBank(std::size_t dim, std::size_t num_clauses, int states_per_action,
             std::size_t max_literals);

  /// Bank with given positive/negated literals hard-included (states pushed
  /// to the extremes). Used by tests and by model deserialization.
  static ClauseBank from_included_literals(
      std::size_t dim, std::size_t num_clauses, int states_per_action,
      std::size_t max_literals,
      const std::vector<std::vector<std::uint32_t>>& literals);

  std::size_t dim() const { return dim_; }
  std::size_t num_clauses() const { return num_clauses_; }
  std::size_t num_literals() const { return 2 * dim_; }
  int states_per_action() const { return states_per_action_; }
  std::size_t max_literals() const { return max_literals_; }

  std::uint8_t state(std::size_t clause, std::size_t literal) const {
    return states_[clause * 2 * dim_ + literal];
  }
  /// Overwrites one automaton state, keeping the include list consistent.
  void set_state(std::size_t clause, std::size_t literal, std::uint8_t value);

  std::span<const std::uint32_t> included_literals(std::size_t clause) const {
    return includes_[clause];
  }
  std::span<const std::uint8_t> states() const { return states_; }

  /// Truth value of literal `lit` on input x: bit lit for lit < dim, the
  /// negation of bit lit-dim otherwise.
  bool literal_value(const Hypervector& x, std::size_t lit) const {
    return lit < dim_ ? x.test(lit) : !x.test(lit - dim_);
  }

  /// Conjunction over the included literals. An empty clause evaluates to 1
  /// while training (so feedback can bootstrap it) and 0 when predicting.
  bool evaluate(std::size_t clause, const Hypervector& x, bool training) const;
  void evaluate_all(const Hypervector& x, bool training,
                    std::vector<std::uint8_t>& out) const;

  /// Standard Tsetlin type I feedback: if the clause fired, reinforce
  /// matching literals toward include (probability 1 with boost, else
  /// (s-1)/s) and drift non-matching literals toward exclude with
  /// probability 1/s; if it did not fire, drift everything toward exclude
  /// with probability 1/s.
  void type_i_feedback(std::size_t clause, const Hypervector& x, bool fired,
                       double specificity, bool boost, Rng& rng);

  /// Standard type II feedback: push excluded literals that contradict x
  /// one step toward include, so the clause stops firing on x.
  void type_ii_feedback(std::size_t clause, const Hypervector& x, Rng& rng);

 private:
  void increment(std::size_t clause, std::size_t literal);
  void decrement(std::size_t clause, std::size_t literal);

  std::size_t dim_;
  std::size_t num_clauses_;
  int states_per_action_;
  std::size_t max_literals_;
  std::vector<std::uint8_t> states_;                  // num_clauses x 2*dim
  std::vector<std::vector<std::uint32_t>> includes_;  // literal ids per clause
};

/// Coalesced Tsetlin Machine: one shared clause bank plus an integer weight
/// per (clause, class). Class score is the weighted sum of firing clauses;
/// prediction is the argmax with ties to the lowest class index.
class CotmModel {
 public:
  CotmModel(const CotmConfig& cfg, std::size_t dim);
  CotmModel(const CotmConfig& cfg, ClauseBank bank,
            std::vector<std::int32_t> weights);

  const CotmConfig& config() const { return cfg_; }
  const ClauseBank& bank() const { return bank_; }
  ClauseBank& bank() { return bank_; }

  std::int32_t weight(std::size_t clause, std::size_t cls) const {
    return weights_[clause * cfg_.num_classes + cls];
  }
  void set_weight(std::size_t clause, std::size_t cls, std::int32_t w) {
    weights_[clause * cfg_.num_classes + cls] = w;
  }
  std::span<const std::int32_t> weights() const { return weights_; }

  /// Unclipped weighted clause sums, one per class.
  std::vector<std::int64_t> class_sums(const Hypervector& x, bool training = false) const;

  std::size_t predict(const Hypervector& x) const;

  /// One pass over the dataset in a fresh shuffled order. Labels must be
  /// < num_classes.
  void train_epoch(std::span<const Hypervector> inputs, std::span<const int> labels);

  /// cfg.epochs passes.
  void train(std::span<const Hypervector> inputs, std::span<const int> labels);

  /// Clauses that fire on x (prediction mode) and carry strictly positive
  /// weight for the class: the positive evidence behind a prediction.
  std::vector<std::pair<std::size_t, std::int32_t>> active_clauses(
      const Hypervector& x, std::size_t cls) const;

 private:
  void feedback_pass(const Hypervector& x, const std::vector<std::uint8_t>& outputs,
                     std::size_t cls, double probability, bool toward);

  CotmConfig cfg_;
  ClauseBank bank_;
  std::vector<std::int32_t> weights_;  // num_clauses x num_classes
  Rng rng_;
  std::vector<std::uint8_t> scratch_outputs_;
};

}  // namespace hvg
