#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ksub/valued_function.hpp"
#include "test_support.hpp"

using namespace ksub;
using namespace ksub::testing;

TEST_CASE("evaluation") {
  const ValuedFunction zero = ValuedFunction::dense(
      2, 1, {Rational(0), Rational(0), Rational(0)});
  for (const Labeling& T : LabelingRange(2, 1)) CHECK(zero.evaluate(T) == 0);

  const ValuedFunction e1 = e1_terms();
  CHECK(e1.evaluate(lab(3, {1})) == -1);
  CHECK(e1.evaluate(lab(3, {0})) == 0);
  CHECK(e1.evaluate(lab(3, {3})) == 2);

  // Two identical unary terms double the unary value.
  ValuedFunction::Term t;
  t.scope = {0};
  t.table = {Rational(0), Rational(-1), Rational(1), Rational(2)};
  const ValuedFunction doubled = ValuedFunction::sum_of_terms(3, 1, {t, t});
  for (const Labeling& T : LabelingRange(3, 1))
    CHECK(doubled.evaluate(T) == 2 * e1.evaluate(T));

  CHECK_THROWS_AS(e1.evaluate(lab(3, {1, 2})), std::invalid_argument);

  // Term backend evaluates exactly like its dense expansion.
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    ValuedFunction::Term binary;
    binary.scope = {static_cast<int>(rng.next(0, 1)), 2};
    binary.table.clear();
    for (int i = 0; i < 16; ++i) binary.table.emplace_back(rng.next(-4, 4));
    ValuedFunction::Term unary;
    unary.scope = {1};
    unary.table.clear();
    for (int i = 0; i < 4; ++i) unary.table.emplace_back(rng.next(-4, 4));
    const ValuedFunction f = ValuedFunction::sum_of_terms(3, 3, {binary, unary});
    const ValuedFunction dense = f.expanded();
    for (const Labeling& T : LabelingRange(3, 3))
      CHECK(f.evaluate(T) == dense.evaluate(T));
  }
}

TEST_CASE("normalization") {
  const ValuedFunction constant5 = ValuedFunction::dense(
      1, 1, {Rational(5), Rational(5)});
  Rational offset;
  const ValuedFunction normalized = constant5.normalized(&offset);
  CHECK(offset == 5);
  for (const Labeling& T : LabelingRange(1, 1)) CHECK(normalized.evaluate(T) == 0);

  const ValuedFunction again = normalized.normalized(&offset);
  CHECK(offset == 0);
  for (const Labeling& T : LabelingRange(1, 1))
    CHECK(again.evaluate(T) == normalized.evaluate(T));

  // The minimum shifts by exactly -f(0).
  Rng rng(7);
  const ValuedFunction f = random_table(2, 2, 5, rng);
  const ValuedFunction g = f.normalized(&offset);
  CHECK(offset == f.value_at_zero());
  CHECK(brute_force_min(g).first == brute_force_min(f).first - offset);

  // Term backend keeps its terms after normalization.
  ValuedFunction::Term t;
  t.scope = {0};
  t.table = {Rational(3), Rational(4), Rational(2)};
  const ValuedFunction terms = ValuedFunction::sum_of_terms(2, 1, {t});
  const ValuedFunction norm_terms = terms.normalized(&offset);
  CHECK(offset == 3);
  CHECK_FALSE(norm_terms.is_dense());
  CHECK(norm_terms.value_at_zero() == 0);
  CHECK(norm_terms.evaluate(lab(2, {1})) == 1);
}

TEST_CASE("submodularity checks") {
  CHECK_FALSE(check_k_submodular(e1_dense()).has_value());
  CHECK_FALSE(check_k_submodular(e1_terms()).has_value());

  const auto witness = check_k_submodular(h_bad());
  REQUIRE(witness.has_value());
  CHECK(witness->T == lab(2, {1}));
  CHECK(witness->U == lab(2, {2}));
  CHECK(witness->lhs == 0);
  CHECK(witness->rhs == -2);

  // k = 1 modular cardinality function is submodular.
  const ValuedFunction card = ValuedFunction::dense(
      1, 2, {Rational(0), Rational(1), Rational(1), Rational(2)});
  CHECK_FALSE(check_k_submodular(card).has_value());
  CHECK_FALSE(check_k_supermodular(card).has_value());
  CHECK_FALSE(check_k_modular(card).has_value());
}

TEST_CASE("supermodular and modular checks") {
  const ValuedFunction zero = ValuedFunction::dense(
      3, 1, {Rational(0), Rational(0), Rational(0), Rational(0)});
  CHECK_FALSE(check_k_modular(zero).has_value());

  // First supermodularity violation of the unary instance in pair order:
  // leaves 1 and 3 have g(1) + g(3) = 1 > 0.
  const auto witness = check_k_supermodular(e1_dense());
  REQUIRE(witness.has_value());
  CHECK(witness->T == lab(3, {1}));
  CHECK(witness->U == lab(3, {3}));
  CHECK(witness->lhs == 0);
  CHECK(witness->rhs == 1);

  // Modular check fails for the same reason.
  CHECK(check_k_modular(e1_dense()).has_value());
}

TEST_CASE("pairwise characterization") {
  CHECK_FALSE(check_pairwise(e1_dense()).has_value());

  const auto witness = check_pairwise(h_bad());
  REQUIRE(witness.has_value());
  CHECK(witness->T == lab(2, {1}));
  CHECK(witness->U == lab(2, {2}));

  // Verdict agreement with the full check on random k = 3, n = 2 tables;
  // modularity likewise must coincide with both one-sided checks passing.
  Rng rng(424242);
  for (int trial = 0; trial < 1000; ++trial) {
    const ValuedFunction f = random_table(3, 2, 3, rng);
    const bool sub = !check_k_submodular(f).has_value();
    CHECK(!check_pairwise(f).has_value() == sub);
    const bool super = !check_k_supermodular(f).has_value();
    CHECK(!check_k_modular(f).has_value() == (sub && super));
  }

  // Exhaustive agreement over all k = 2, n = 1 integer tables in [-1, 1].
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) {
        const ValuedFunction f = ValuedFunction::dense(
            2, 1, {Rational(a), Rational(b), Rational(c)});
        CHECK(check_pairwise(f).has_value() == check_k_submodular(f).has_value());
      }
}

TEST_CASE("brute-force minimization") {
  const auto [v1, t1] = brute_force_min(e1_dense());
  CHECK(v1 == -1);
  CHECK(t1 == lab(3, {1}));

  const ValuedFunction zero = ValuedFunction::dense(
      2, 2, std::vector<Rational>(9, Rational(0)));
  const auto [v0, t0] = brute_force_min(zero);
  CHECK(v0 == 0);
  CHECK(t0 == Labeling::zero(2, 2));

  // Normalized submodular functions have nonpositive minima.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ValuedFunction f = gen_unary(3, 2, seed);
    CHECK(brute_force_min(f).first <= 0);
  }
}

TEST_CASE("restriction") {
  // Fixing a coordinate of a unary sum drops one term into the constant.
  const ValuedFunction f = e2();
  const ValuedFunction g = f.restrict_fix(0, Label::leaf(1));
  CHECK(g.n() == 1);
  CHECK(g.evaluate(lab(2, {0})) == 1);
  CHECK(g.evaluate(lab(2, {1})) == 2);
  CHECK(g.evaluate(lab(2, {2})) == 1);

  // Fixing to the root preserves normalization.
  const ValuedFunction r = f.restrict_fix(1, Label::root());
  CHECK(r.value_at_zero() == 0);

  // Dense route agrees with the term route.
  const ValuedFunction dense_g = f.expanded().restrict_fix(0, Label::leaf(1));
  for (const Labeling& T : LabelingRange(2, 1))
    CHECK(dense_g.evaluate(T) == g.evaluate(T));

  // Submodularity is preserved under fixing.
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const ValuedFunction u = gen_rejection(2, 2, 2, seed);
    for (int token = 0; token <= 2; ++token) {
      const Label l = token == 0 ? Label::root() : Label::leaf(token);
      CHECK_FALSE(check_k_submodular(u.restrict_fix(0, l)).has_value());
    }
  }

  CHECK_THROWS_AS(f.restrict_fix(5, Label::root()), std::invalid_argument);
}

TEST_CASE("generators") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const ValuedFunction f = gen_unary(3, 3, seed);
    CHECK_FALSE(check_k_submodular(f).has_value());
    CHECK(f.value_at_zero() == 0);
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RejectionStats stats;
    const ValuedFunction f = gen_rejection(3, 1, 2, seed, 10000, &stats);
    CHECK_FALSE(check_k_submodular(f).has_value());
    CHECK(f.value_at_zero() == 0);
    CHECK(stats.attempts >= 1);
  }
  // Seeded determinism.
  const ValuedFunction a = gen_unary(3, 2, 123);
  const ValuedFunction b = gen_unary(3, 2, 123);
  for (const Labeling& T : LabelingRange(3, 2))
    CHECK(a.evaluate(T) == b.evaluate(T));

  // Sums of k-submodular functions stay k-submodular.
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ValuedFunction f = gen_unary(2, 2, seed);
    const ValuedFunction g = gen_rejection(2, 2, 2, seed + 1000);
    std::vector<Rational> sum;
    for (std::uint64_t i = 0; i < labeling_count(2, 2); ++i)
      sum.push_back(f.evaluate_index(i) + g.evaluate_index(i));
    CHECK_FALSE(
        check_k_submodular(ValuedFunction::dense(2, 2, std::move(sum))).has_value());
  }
}

TEST_CASE("budget guards") {
  const ValuedFunction f = e1_dense();
  CHECK_THROWS_AS(check_k_submodular(f, 5), BudgetExceeded);
  CHECK_THROWS_AS(brute_force_min(f, 2), BudgetExceeded);
}
