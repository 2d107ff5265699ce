#ifndef KSUB_TEST_SUPPORT_HPP
#define KSUB_TEST_SUPPORT_HPP

#include <stdexcept>
#include <vector>

#include "ksub/rng.hpp"
#include "ksub/valued_function.hpp"

namespace ksub::testing {

inline Labeling lab(int k, const std::vector<int>& tokens) {
  return Labeling::from_tokens(k, tokens);
}

// Unary instance on k = 3, n = 1 with values 0, -1, 1, 2; k-submodular with
// minimum -1 at leaf 1.
inline ValuedFunction e1_dense() {
  return ValuedFunction::dense(3, 1, {Rational(0), Rational(-1), Rational(1), Rational(2)});
}

inline ValuedFunction e1_terms() {
  ValuedFunction::Term term;
  term.scope = {0};
  term.table = {Rational(0), Rational(-1), Rational(1), Rational(2)};
  return ValuedFunction::sum_of_terms(3, 1, {term});
}

// Two unary terms g(0) = 0, g(1) = 1, g(2) = 0 on k = 2, n = 2; nonnegative
// with minimum 0.
inline ValuedFunction e2() {
  ValuedFunction::Term a;
  a.scope = {0};
  a.table = {Rational(0), Rational(1), Rational(0)};
  ValuedFunction::Term b = a;
  b.scope = {1};
  return ValuedFunction::sum_of_terms(2, 2, {a, b});
}

// k = 2, n = 1 with h(1) = h(2) = -1: fails the submodularity check on the
// distinct-leaf pair.
inline ValuedFunction h_bad() {
  return ValuedFunction::dense(2, 1, {Rational(0), Rational(-1), Rational(-1)});
}

// Arbitrary integer table (not necessarily submodular), value at 0 included.
inline ValuedFunction random_table(int k, int n, int range, Rng& rng) {
  const std::uint64_t count = labeling_count(k, n);
  std::vector<Rational> values;
  values.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i)
    values.emplace_back(rng.next(-range, range));
  return ValuedFunction::dense(k, n, std::move(values));
}

// Random submodular set function (k = 1): weighted coverage plus a concave
// function of the cardinality plus a modular shift; normalized and integer.
inline ValuedFunction random_submodular_set_function(int n, std::uint64_t seed) {
  Rng rng(seed);
  const int num_sets = static_cast<int>(rng.next(1, 3));
  std::vector<std::uint64_t> masks;
  std::vector<long> weights;
  for (int j = 0; j < num_sets; ++j) {
    const std::uint64_t mask =
        static_cast<std::uint64_t>(rng.next(1, (1L << n) - 1));
    masks.push_back(mask);
    weights.push_back(rng.next(1, 3));
  }
  std::vector<long> gaps(static_cast<std::size_t>(n));
  for (long& g : gaps) g = rng.next(-2, 3);
  std::sort(gaps.rbegin(), gaps.rend());
  std::vector<long> modular(static_cast<std::size_t>(n));
  for (long& c : modular) c = rng.next(-3, 3);

  const std::uint64_t count = labeling_count(1, n);
  std::vector<Rational> values;
  values.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const Labeling T = labeling_from_index(1, n, idx);
    long total = 0;
    std::uint64_t mask = 0;
    int cardinality = 0;
    for (int i = 0; i < n; ++i) {
      if (T[i].is_leaf()) {
        mask |= std::uint64_t{1} << i;
        ++cardinality;
        total += modular[static_cast<std::size_t>(i)];
      }
    }
    for (int j = 0; j < num_sets; ++j)
      if ((masks[static_cast<std::size_t>(j)] & mask) != 0)
        total += weights[static_cast<std::size_t>(j)];
    for (int m = 0; m < cardinality; ++m) total += gaps[static_cast<std::size_t>(m)];
    values.emplace_back(total);
  }
  ValuedFunction f = ValuedFunction::dense(1, n, std::move(values));
  if (check_k_submodular(f))
    throw std::logic_error("set-function generator produced a non-submodular table");
  return f;
}

}  // namespace ksub::testing

#endif  // KSUB_TEST_SUPPORT_HPP
