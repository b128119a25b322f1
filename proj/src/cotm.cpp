#include "hvg/cotm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hvg {

ClauseBank::ClauseBank(std::size_t dim, std::size_t num_clauses,
                       int states_per_action, std::size_t max_literals)
    : dim_(dim),
      num_clauses_(num_clauses),
      states_per_action_(states_per_action),
      max_literals_(max_literals),
      includes_(num_clauses) {
  if (dim == 0 || num_clauses == 0) {
    throw std::invalid_argument("ClauseBank: empty bank");
  }
  if (states_per_action < 1 || states_per_action > 127) {
    throw std::invalid_argument("ClauseBank: states_per_action must be in [1, 127]");
  }
  // Everything starts at the include/exclude boundary on the exclude side:
  // clauses are empty until type I feedback pulls literals in.
  states_.assign(num_clauses * 2 * dim, static_cast<std::uint8_t>(states_per_action));
}

ClauseBank ClauseBank::from_included_literals(
    std::size_t dim, std::size_t num_clauses, int states_per_action,
    std::size_t max_literals,
    const std::vector<std::vector<std::uint32_t>>& literals) {
  if (literals.size() > num_clauses) {
    throw std::invalid_argument("from_included_literals: more clauses than the bank holds");
  }
  ClauseBank bank(dim, num_clauses, states_per_action, max_literals);
  for (std::size_t t = 0; t < literals.size(); ++t) {
    for (std::uint32_t lit : literals[t]) {
      bank.set_state(t, lit, static_cast<std::uint8_t>(2 * states_per_action));
    }
  }
  return bank;
}

void ClauseBank::set_state(std::size_t clause, std::size_t literal, std::uint8_t value) {
  if (value < 1 || value > 2 * states_per_action_) {
    throw std::invalid_argument("set_state: state out of range");
  }
  std::uint8_t& st = states_[clause * 2 * dim_ + literal];
  const bool was_included = st > states_per_action_;
  const bool now_included = value > states_per_action_;
  st = value;
  if (was_included == now_included) return;
  auto& inc = includes_[clause];
  if (now_included) {
    inc.push_back(static_cast<std::uint32_t>(literal));
  } else {
    inc.erase(std::find(inc.begin(), inc.end(), static_cast<std::uint32_t>(literal)));
  }
}

bool ClauseBank::evaluate(std::size_t clause, const Hypervector& x, bool training) const {
  const auto& inc = includes_[clause];
  if (inc.empty()) return training;
  for (std::uint32_t lit : inc) {
    if (!literal_value(x, lit)) return false;
  }
  return true;
}

void ClauseBank::evaluate_all(const Hypervector& x, bool training,
                              std::vector<std::uint8_t>& out) const {
  out.resize(num_clauses_);
  for (std::size_t t = 0; t < num_clauses_; ++t) out[t] = evaluate(t, x, training);
}

void ClauseBank::increment(std::size_t clause, std::size_t literal) {
  std::uint8_t& st = states_[clause * 2 * dim_ + literal];
  if (st == 2 * states_per_action_) return;
  if (st == states_per_action_ && includes_[clause].size() >= max_literals_) {
    return;  // include budget exhausted: the transition is suppressed
  }
  ++st;
  if (st == states_per_action_ + 1) {
    includes_[clause].push_back(static_cast<std::uint32_t>(literal));
  }
}

void ClauseBank::decrement(std::size_t clause, std::size_t literal) {
  std::uint8_t& st = states_[clause * 2 * dim_ + literal];
  if (st == 1) return;
  --st;
  if (st == states_per_action_) {
    auto& inc = includes_[clause];
    inc.erase(std::find(inc.begin(), inc.end(), static_cast<std::uint32_t>(literal)));
  }
}

void ClauseBank::type_i_feedback(std::size_t clause, const Hypervector& x,
                                 bool fired, double specificity, bool boost,
                                 Rng& rng) {
  const double drift = 1.0 / specificity;
  const std::size_t n_lit = 2 * dim_;
  if (!fired) {
    for (std::size_t lit = 0; lit < n_lit; ++lit) {
      if (rng.next_bernoulli(drift)) decrement(clause, lit);
    }
    return;
  }
  const double reinforce = (specificity - 1.0) / specificity;
  // The include budget caps how many literals can enter per pass; a rotating
  // start keeps the admitted positions uniform instead of favoring low
  // indices.
  const std::size_t start = rng.next_below(n_lit);
  for (std::size_t i = 0; i < n_lit; ++i) {
    const std::size_t lit = start + i < n_lit ? start + i : start + i - n_lit;
    if (literal_value(x, lit)) {
      if (boost || rng.next_bernoulli(reinforce)) increment(clause, lit);
    } else if (rng.next_bernoulli(drift)) {
      decrement(clause, lit);
    }
  }
}

void ClauseBank::type_ii_feedback(std::size_t clause, const Hypervector& x, Rng& rng) {
  const std::size_t n_lit = 2 * dim_;
  const std::size_t start = rng.next_below(n_lit);
  for (std::size_t i = 0; i < n_lit; ++i) {
    const std::size_t lit = start + i < n_lit ? start + i : start + i - n_lit;
    if (!literal_value(x, lit) && state(clause, lit) <= states_per_action_) {
      increment(clause, lit);
    }
  }
}

CotmModel::CotmModel(const CotmConfig& cfg, std::size_t dim)
    : cfg_(cfg),
      bank_(dim, cfg.num_clauses, cfg.states_per_action, cfg.max_literals),
      weights_(cfg.num_clauses * cfg.num_classes, 0),
      rng_(derive_stream(cfg.seed, "cotm")) {
  if (cfg.num_classes == 0) throw std::invalid_argument("CotmModel: no classes");
  if (cfg.threshold < 1) throw std::invalid_argument("CotmModel: threshold < 1");
  if (!(cfg.specificity > 1.0)) throw std::invalid_argument("CotmModel: specificity <= 1");
}

CotmModel::CotmModel(const CotmConfig& cfg, ClauseBank bank,
                     std::vector<std::int32_t> weights)
    : cfg_(cfg),
      bank_(std::move(bank)),
      weights_(std::move(weights)),
      rng_(derive_stream(cfg.seed, "cotm")) {
  if (weights_.size() != cfg_.num_clauses * cfg_.num_classes) {
    throw std::invalid_argument("CotmModel: weight matrix shape mismatch");
  }
}

std::vector<std::int64_t> CotmModel::class_sums(const Hypervector& x, bool training) const {
  if (x.dim() != bank_.dim()) throw std::invalid_argument("class_sums: dimension mismatch");
  std::vector<std::int64_t> sums(cfg_.num_classes, 0);
  for (std::size_t t = 0; t < cfg_.num_clauses; ++t) {
    if (!bank_.evaluate(t, x, training)) continue;
    for (std::size_t y = 0; y < cfg_.num_classes; ++y) {
      sums[y] += weight(t, y);
    }
  }
  return sums;
}

std::size_t CotmModel::predict(const Hypervector& x) const {
  const std::vector<std::int64_t> sums = class_sums(x, /*training=*/false);
  std::size_t best = 0;
  for (std::size_t y = 1; y < sums.size(); ++y) {
    if (sums[y] > sums[best]) best = y;
  }
  return best;
}

void CotmModel::feedback_pass(const Hypervector& x,
                              const std::vector<std::uint8_t>& outputs,
                              std::size_t cls, double probability, bool toward) {
  for (std::size_t t = 0; t < cfg_.num_clauses; ++t) {
    if (!rng_.next_bernoulli(probability)) continue;
    const bool fired = outputs[t];
    const std::int32_t w = weight(t, cls);
    const bool positive_polarity = w >= 0;
    if (toward) {
      if (positive_polarity) {
        bank_.type_i_feedback(t, x, fired, cfg_.specificity,
                              cfg_.boost_true_positive, rng_);
      } else if (fired) {
        bank_.type_ii_feedback(t, x, rng_);
      }
      if (fired) set_weight(t, cls, w + 1);
    } else {
      if (positive_polarity) {
        if (fired) bank_.type_ii_feedback(t, x, rng_);
      } else {
        bank_.type_i_feedback(t, x, fired, cfg_.specificity,
                              cfg_.boost_true_positive, rng_);
      }
      if (fired) set_weight(t, cls, w - 1);
    }
  }
}

void CotmModel::train_epoch(std::span<const Hypervector> inputs,
                            std::span<const int> labels) {
  if (inputs.empty() || inputs.size() != labels.size()) {
    throw std::invalid_argument("train_epoch: bad dataset");
  }
  for (int y : labels) {
    if (y < 0 || static_cast<std::size_t>(y) >= cfg_.num_classes) {
      throw std::invalid_argument("train_epoch: label out of range");
    }
  }
  const double t_thr = static_cast<double>(cfg_.threshold);
  auto clip = [&](std::int64_t v) {
    return static_cast<double>(std::clamp<std::int64_t>(v, -cfg_.threshold, cfg_.threshold));
  };

  std::vector<std::size_t> order(inputs.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng_.next_below(i)]);
  }

  for (std::size_t idx : order) {
    const Hypervector& x = inputs[idx];
    const auto y = static_cast<std::size_t>(labels[idx]);
    bank_.evaluate_all(x, /*training=*/true, scratch_outputs_);

    std::vector<std::int64_t> sums(cfg_.num_classes, 0);
    for (std::size_t t = 0; t < cfg_.num_clauses; ++t) {
      if (!scratch_outputs_[t]) continue;
      for (std::size_t c = 0; c < cfg_.num_classes; ++c) sums[c] += weight(t, c);
    }

    // Reinforce the true class...
    feedback_pass(x, scratch_outputs_, y, (t_thr - clip(sums[y])) / (2.0 * t_thr),
                  /*toward=*/true);

    // ...and push down one uniformly drawn negative class.
    if (cfg_.num_classes > 1) {
      std::size_t neg = rng_.next_below(cfg_.num_classes - 1);
      if (neg >= y) ++neg;
      feedback_pass(x, scratch_outputs_, neg,
                    (t_thr + clip(sums[neg])) / (2.0 * t_thr), /*toward=*/false);
    }
  }
}

void CotmModel::train(std::span<const Hypervector> inputs, std::span<const int> labels) {
  for (std::size_t e = 0; e < cfg_.epochs; ++e) train_epoch(inputs, labels);
}

std::vector<std::pair<std::size_t, std::int32_t>> CotmModel::active_clauses(
    const Hypervector& x, std::size_t cls) const {
  if (cls >= cfg_.num_classes) throw std::invalid_argument("active_clauses: bad class");
  std::vector<std::pair<std::size_t, std::int32_t>> out;
  for (std::size_t t = 0; t < cfg_.num_clauses; ++t) {
    const std::int32_t w = weight(t, cls);
    if (w > 0 && bank_.evaluate(t, x, /*training=*/false)) {
      out.emplace_back(t, w);
    }
  }
  return out;
}

}  // namespace hvg
