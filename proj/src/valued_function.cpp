#include "ksub/valued_function.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ksub/rng.hpp"

namespace ksub {

ValuedFunction ValuedFunction::dense(int k, int n, std::vector<Rational> values) {
  const std::uint64_t count = labeling_count(k, n);
  if (values.size() != count) {
    throw std::invalid_argument("dense table needs " + std::to_string(count) +
                                " values, got " + std::to_string(values.size()));
  }
  ValuedFunction f(k, n);
  f.dense_backend_ = true;
  f.values_ = std::move(values);
  return f;
}

ValuedFunction ValuedFunction::sum_of_terms(int k, int n, std::vector<Term> terms) {
  if (k < 1 || n < 1) throw std::invalid_argument("k and n must be >= 1");
  for (const Term& term : terms) {
    if (term.scope.empty() || term.scope.size() > static_cast<std::size_t>(n))
      throw std::invalid_argument("term arity must be in 1..n");
    std::vector<int> sorted = term.scope;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("term scope repeats a coordinate");
    if (sorted.front() < 0 || sorted.back() >= n)
      throw std::invalid_argument("term scope coordinate out of range");
    const std::uint64_t local = labeling_count(k, static_cast<int>(term.scope.size()));
    if (term.table.size() != local)
      throw std::invalid_argument("term table has wrong size");
  }
  ValuedFunction f(k, n);
  f.dense_backend_ = false;
  f.terms_ = std::move(terms);
  return f;
}

Rational ValuedFunction::evaluate(const Labeling& T) const {
  if (T.k() != k_ || T.n() != n_)
    throw std::invalid_argument("labeling has mismatched (k, n)");
  if (dense_backend_) return values_[labeling_index(T)];
  Rational sum = constant_;
  const std::uint64_t base = static_cast<std::uint64_t>(k_) + 1;
  for (const Term& term : terms_) {
    std::uint64_t local = 0;
    for (int coord : term.scope)
      local = local * base + static_cast<std::uint64_t>(T[coord].token());
    sum += term.table[local];
  }
  return sum;
}

Rational ValuedFunction::evaluate_index(std::uint64_t index) const {
  if (dense_backend_) return values_[index];
  return evaluate(labeling_from_index(k_, n_, index));
}

Rational ValuedFunction::value_at_zero() const {
  return evaluate_index(0);
}

ValuedFunction ValuedFunction::normalized(Rational* offset) const {
  const Rational at_zero = value_at_zero();
  if (offset != nullptr) *offset = at_zero;
  if (at_zero == 0) return *this;
  ValuedFunction f = *this;
  if (dense_backend_) {
    for (Rational& v : f.values_) v -= at_zero;
  } else {
    f.constant_ -= at_zero;
  }
  return f;
}

ValuedFunction ValuedFunction::expanded(std::uint64_t budget) const {
  if (dense_backend_) return *this;
  const std::uint64_t count = labeling_count(k_, n_, budget);
  std::vector<Rational> values;
  values.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) values.push_back(evaluate_index(i));
  return dense(k_, n_, std::move(values));
}

ValuedFunction ValuedFunction::restrict_fix(int i, Label t) const {
  if (i < 0 || i >= n_) throw std::invalid_argument("coordinate out of range");
  if (t.token() > k_) throw std::invalid_argument("label out of range");
  if (n_ == 1) throw std::invalid_argument("cannot restrict below one coordinate");
  if (dense_backend_) {
    const std::uint64_t count = labeling_count(k_, n_ - 1);
    std::vector<Rational> values;
    values.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      const Labeling small = labeling_from_index(k_, n_ - 1, idx);
      std::vector<Label> entries;
      entries.reserve(static_cast<std::size_t>(n_));
      for (int j = 0; j < n_ - 1; ++j) {
        if (j == i) entries.push_back(t);
        entries.push_back(small[j]);
      }
      if (i == n_ - 1) entries.push_back(t);
      values.push_back(evaluate(Labeling(k_, std::move(entries))));
    }
    return dense(k_, n_ - 1, std::move(values));
  }
  const std::uint64_t base = static_cast<std::uint64_t>(k_) + 1;
  ValuedFunction f(k_, n_ - 1);
  f.dense_backend_ = false;
  f.constant_ = constant_;
  for (const Term& term : terms_) {
    const auto pos = std::find(term.scope.begin(), term.scope.end(), i);
    if (pos == term.scope.end()) {
      Term shifted = term;
      for (int& c : shifted.scope)
        if (c > i) --c;
      f.terms_.push_back(std::move(shifted));
      continue;
    }
    const int p = static_cast<int>(pos - term.scope.begin());
    const int arity = static_cast<int>(term.scope.size());
    if (arity == 1) {
      f.constant_ += term.table[static_cast<std::uint64_t>(t.token())];
      continue;
    }
    Term reduced;
    for (int q = 0; q < arity; ++q) {
      if (q == p) continue;
      int c = term.scope[static_cast<std::size_t>(q)];
      reduced.scope.push_back(c > i ? c - 1 : c);
    }
    const std::uint64_t local_count = labeling_count(k_, arity - 1);
    reduced.table.reserve(local_count);
    for (std::uint64_t idx = 0; idx < local_count; ++idx) {
      const Labeling small = labeling_from_index(k_, arity - 1, idx);
      std::uint64_t full = 0;
      int taken = 0;
      for (int q = 0; q < arity; ++q) {
        const int token = q == p ? t.token() : small[taken++].token();
        full = full * base + static_cast<std::uint64_t>(token);
      }
      reduced.table.push_back(term.table[full]);
    }
    f.terms_.push_back(std::move(reduced));
  }
  return f;
}

bool ValuedFunction::integer_valued(std::uint64_t budget) const {
  const std::uint64_t count = labeling_count(k_, n_, budget);
  for (std::uint64_t i = 0; i < count; ++i)
    if (!is_integer(evaluate_index(i))) return false;
  return true;
}

namespace {

enum class PairCheck { kSubmodular, kSupermodular, kModular };

// Scans ordered pairs (T, U) in enumeration order; `pairwise_only` restricts
// to compatible pairs and single-coordinate two-distinct-leaf pairs.
std::optional<ViolationWitness> scan_pairs(const ValuedFunction& f,
                                           PairCheck mode, bool pairwise_only,
                                           std::uint64_t budget) {
  const std::uint64_t count = labeling_count(f.k(), f.n(), budget);
  if (count > budget / count)
    throw BudgetExceeded("pair scan exceeds enumeration budget");

  std::vector<Labeling> all;
  std::vector<Rational> vals;
  all.reserve(count);
  vals.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    all.push_back(labeling_from_index(f.k(), f.n(), i));
    vals.push_back(f.evaluate_index(i));
  }

  for (std::uint64_t a = 0; a < count; ++a) {
    for (std::uint64_t b = 0; b < count; ++b) {
      const Labeling& T = all[a];
      const Labeling& U = all[b];
      if (pairwise_only) {
        int differing = -1;
        bool single_diff = true;
        bool is_compatible = true;
        for (int i = 0; i < f.n(); ++i) {
          if (T[i] != U[i]) {
            if (differing >= 0) single_diff = false;
            differing = i;
            if (T[i].is_leaf() && U[i].is_leaf()) is_compatible = false;
          }
        }
        const bool leaf_pair = single_diff && differing >= 0 &&
                               T[differing].is_leaf() && U[differing].is_leaf();
        if (!is_compatible && !leaf_pair) continue;
      }
      const Rational lhs =
          vals[labeling_index(meet_vec(T, U))] + vals[labeling_index(join_vec(T, U))];
      const Rational rhs = vals[a] + vals[b];
      const bool bad = mode == PairCheck::kSubmodular  ? lhs > rhs
                       : mode == PairCheck::kSupermodular ? lhs < rhs
                                                          : lhs != rhs;
      if (bad) return ViolationWitness{T, U, lhs, rhs};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<ViolationWitness> check_k_submodular(const ValuedFunction& f,
                                                   std::uint64_t budget) {
  return scan_pairs(f, PairCheck::kSubmodular, false, budget);
}

std::optional<ViolationWitness> check_k_supermodular(const ValuedFunction& f,
                                                     std::uint64_t budget) {
  return scan_pairs(f, PairCheck::kSupermodular, false, budget);
}

std::optional<ViolationWitness> check_k_modular(const ValuedFunction& f,
                                                std::uint64_t budget) {
  return scan_pairs(f, PairCheck::kModular, false, budget);
}

std::optional<ViolationWitness> check_pairwise(const ValuedFunction& f,
                                               std::uint64_t budget) {
  return scan_pairs(f, PairCheck::kSubmodular, true, budget);
}

std::pair<Rational, Labeling> brute_force_min(const ValuedFunction& f,
                                              std::uint64_t budget) {
  const std::uint64_t count = labeling_count(f.k(), f.n(), budget);
  Rational best = f.evaluate_index(0);
  std::uint64_t best_index = 0;
  for (std::uint64_t i = 1; i < count; ++i) {
    const Rational v = f.evaluate_index(i);
    if (v < best) {
      best = v;
      best_index = i;
    }
  }
  return {best, labeling_from_index(f.k(), f.n(), best_index)};
}

ValuedFunction gen_unary(int k, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ValuedFunction::Term> terms;
  terms.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ValuedFunction::Term term;
    term.scope = {i};
    term.table.assign(static_cast<std::size_t>(k) + 1, Rational(0));
    if (k == 1) {
      const long up = rng.next(0, 5);
      const long down = rng.next(0, 6);
      term.table[1] = Rational(up - down);
    } else {
      // One leaf may dip below zero, but never deeper than the smallest of
      // the others, so g(a) + g(b) >= 0 holds for every distinct leaf pair.
      std::vector<long> leaf_vals(static_cast<std::size_t>(k));
      for (long& v : leaf_vals) v = rng.next(0, 5);
      const int dip = static_cast<int>(rng.next(1, k));
      const long depth = rng.next(0, 6);
      long min_other = leaf_vals[dip == 1 ? 1 : 0];
      for (int l = 1; l <= k; ++l)
        if (l != dip)
          min_other = std::min(min_other, leaf_vals[static_cast<std::size_t>(l - 1)]);
      leaf_vals[static_cast<std::size_t>(dip - 1)] = -std::min(depth, min_other);
      for (int l = 1; l <= k; ++l)
        term.table[static_cast<std::size_t>(l)] =
            Rational(leaf_vals[static_cast<std::size_t>(l - 1)]);
    }
    terms.push_back(std::move(term));
  }
  return ValuedFunction::sum_of_terms(k, n, std::move(terms));
}

ValuedFunction gen_rejection(int k, int n, int range, std::uint64_t seed,
                             int retry_limit, RejectionStats* stats) {
  if (range < 0) throw std::invalid_argument("range must be nonnegative");
  Rng rng(seed);
  const std::uint64_t count = labeling_count(k, n);
  for (int attempt = 1; attempt <= retry_limit; ++attempt) {
    std::vector<Rational> values;
    values.reserve(count);
    values.emplace_back(0);
    for (std::uint64_t i = 1; i < count; ++i)
      values.emplace_back(rng.next(-range, range));
    ValuedFunction f = ValuedFunction::dense(k, n, std::move(values));
    if (!check_k_submodular(f)) {
      if (stats != nullptr) stats->attempts = attempt;
      return f;
    }
  }
  throw KsubError("gen_rejection hit the retry limit of " +
                  std::to_string(retry_limit));
}

}  // namespace ksub
