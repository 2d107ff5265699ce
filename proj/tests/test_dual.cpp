#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ksub/minmax.hpp"
#include "ksub/signed_vector.hpp"
#include "test_support.hpp"

using namespace ksub;
using namespace ksub::testing;

namespace {

SignedVector sv(int k, std::vector<long> x, std::vector<int> leaves) {
  std::vector<Rational> mags;
  for (long v : x) mags.emplace_back(v);
  std::vector<Label> ls;
  for (int l : leaves) ls.push_back(Label::leaf(l));
  return SignedVector(k, std::move(mags), std::move(ls));
}

const SignedVector e1_opt = sv(3, {1}, {2});

}  // namespace

TEST_CASE("signed evaluation") {
  const SignedVector v = sv(2, {2, 1}, {1, 2});
  CHECK(eval_signed(v, lab(2, {0, 0})) == 0);
  CHECK(eval_signed(v, lab(2, {1, 0})) == 2);
  CHECK(eval_signed(v, lab(2, {2, 1})) == -3);

  CHECK(dual_objective(sv(2, {0, 0}, {1, 1})) == 0);
  CHECK(dual_objective(v) == -3);
  // Every coordinate anti-aligned gives exactly -||x||.
  CHECK(eval_signed(v, lab(2, {2, 1})) == dual_objective(v));

  // k = 1: the single leaf contributes -x_i.
  const SignedVector w = sv(1, {3, 2}, {1, 1});
  CHECK(eval_signed(w, lab(1, {1, 0})) == -3);
  CHECK(eval_signed(w, lab(1, {1, 1})) == -5);

  CHECK_THROWS_AS(eval_signed(v, lab(2, {0})), std::invalid_argument);
  CHECK_THROWS_AS(sv(2, {-1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(SignedVector(2, {Rational(1)}, {Label::root()}),
                  std::invalid_argument);
}

TEST_CASE("signed evaluations are k-supermodular") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = static_cast<int>(rng.next(1, 3));
    const int n = static_cast<int>(rng.next(1, 3));
    std::vector<Rational> x;
    std::vector<Label> leaves;
    for (int i = 0; i < n; ++i) {
      x.emplace_back(rng.next(0, 5));
      leaves.push_back(Label::leaf(static_cast<int>(rng.next(1, k))));
    }
    const SignedVector v(k, x, leaves);
    std::vector<Rational> table;
    for (const Labeling& T : LabelingRange(k, n))
      table.push_back(eval_signed(v, T));
    const ValuedFunction f = ValuedFunction::dense(k, n, std::move(table));
    CHECK_FALSE(check_k_supermodular(f).has_value());
    // Per-coordinate bound.
    for (const Labeling& T : LabelingRange(k, n))
      CHECK(eval_signed(v, T) >= dual_objective(v));
  }
}

TEST_CASE("membership in U(f)") {
  const ValuedFunction f = e1_dense();
  CHECK_FALSE(in_U(f, e1_opt).has_value());

  const auto bad = in_U(f, sv(3, {1}, {1}));
  REQUIRE(bad.has_value());
  CHECK(*bad == lab(3, {1}));

  // Zero vector lies in U(f) iff f is nonnegative.
  const ValuedFunction g = e2();
  CHECK_FALSE(in_U(g, SignedVector::zeros(2, 2)).has_value());
  CHECK(in_U(f, SignedVector::zeros(3, 1)).has_value());
}

TEST_CASE("membership below K and in the base set") {
  const ValuedFunction f = e2();
  const Labeling K = lab(2, {1, 1});
  const SignedVector good = sv(2, {1, 1}, {1, 1});
  CHECK_FALSE(in_U_K(f, good, K).has_value());
  CHECK_FALSE(in_B_K(f, good, K).has_value());

  const auto bad = in_U_K(f, sv(2, {3, 0}, {1, 1}), K);
  REQUIRE(bad.has_value());
  CHECK(*bad == lab(2, {1, 0}));

  // Tightness failure reported separately.
  const auto reason = in_B_K(f, sv(2, {1, 0}, {1, 1}), K);
  REQUIRE(reason.has_value());
  CHECK(reason->find("not tight") != std::string::npos);
}

TEST_CASE("greedy base construction") {
  {
    const SignedVector v = greedy_base(e2(), lab(2, {1, 1}));
    CHECK(v.x() == std::vector<Rational>{Rational(1), Rational(1)});
    CHECK(v.leaves() == std::vector<Label>{Label::leaf(1), Label::leaf(1)});
  }
  {
    const ValuedFunction zero =
        ValuedFunction::dense(2, 2, std::vector<Rational>(9, Rational(0)));
    const SignedVector v = greedy_base(zero, lab(2, {2, 1}));
    CHECK(v.norm() == 0);
  }
  {
    const SignedVector v = greedy_base(e1_dense(), lab(3, {1}));
    CHECK(v.x() == std::vector<Rational>{Rational(1)});
    CHECK(v.leaves() == std::vector<Label>{Label::leaf(2)});
  }
  CHECK_THROWS_AS(
      greedy_base(ValuedFunction::dense(1, 1, {Rational(0), Rational(1)}),
                  lab(1, {1})),
      std::invalid_argument);

  // Every order and every K yields a member of B_K(f), hence of U(f).
  Rng rng(31);
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const int k = seed % 2 == 0 ? 2 : 3;
    const int n = static_cast<int>(rng.next(1, 3));
    const ValuedFunction f = gen_unary(k, n, seed);
    for (int round = 0; round < 10; ++round) {
      std::vector<int> tokens;
      for (int i = 0; i < n; ++i)
        tokens.push_back(static_cast<int>(rng.next(1, k)));
      const Labeling K = lab(k, tokens);
      const SignedVector v = greedy_base(f, K, rng.permutation(n));
      CHECK_FALSE(in_B_K(f, v, K).has_value());
      CHECK_FALSE(in_U(f, v).has_value());
    }
  }
}

TEST_CASE("tight family of the worked instance") {
  const ValuedFunction f = e1_dense();
  const TightFamily family = tight_family(f, e1_opt);
  REQUIRE(family.members.size() == 3);
  CHECK(family.members[0] == lab(3, {0}));
  CHECK(family.members[1] == lab(3, {1}));
  CHECK(family.members[2] == lab(3, {2}));
  CHECK(family.contains(join_vec(lab(3, {1}), lab(3, {2}))));

  CHECK(family.negative_support() == std::vector<int>{0});
  REQUIRE(family.negative_at(0).has_value());
  CHECK(*family.negative_at(0) == Label::leaf(1));

  // f restricted to the members is k-modular.
  for (const Labeling& T : family.members)
    for (const Labeling& U : family.members)
      CHECK(f.evaluate(meet_vec(T, U)) + f.evaluate(join_vec(T, U)) ==
            f.evaluate(T) + f.evaluate(U));

  CHECK_THROWS_AS(tight_family(f, sv(3, {1}, {1})), KsubError);
}

TEST_CASE("N-elements") {
  const ValuedFunction f = e1_dense();
  CHECK(N_element(f, e1_opt, 0) == lab(3, {1}));

  const TightFamily family = tight_family(f, e1_opt);
  CHECK(N_element(family, 0) == lab(3, {1}));
  CHECK(N_element(family, 0)[0] == *family.negative_at(0));
  CHECK_THROWS_AS(N_element(family, 5), std::invalid_argument);

  // Meet of a singleton is that element; N carries the negative leaf at i.
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const ValuedFunction g = gen_unary(3, 2, seed);
    const auto best = max_dual(g);
    REQUIRE(best.has_value());
    const TightFamily fam = tight_family(g, best->vector);
    for (int i : fam.negative_support())
      CHECK(N_element(fam, i)[i] == *fam.negative_at(i));
  }
}

TEST_CASE("probing decrements") {
  const ValuedFunction f = e1_dense();
  const auto hit = probe_decrement(f, e1_opt, 0, Rational(1, 2));
  REQUIRE(hit.has_value());
  CHECK(*hit == lab(3, {1}));

  // Strictly slack vector admits a small decrement.
  const ValuedFunction box = ValuedFunction::dense(
      2, 1, {Rational(0), Rational(1), Rational(1)});
  {
    std::vector<Rational> half{Rational(1, 2)};
    const SignedVector v(2, half, {Label::leaf(1)});
    CHECK_FALSE(in_U(box, v).has_value());
    CHECK_FALSE(probe_decrement(box, v, 0, Rational(1, 4)).has_value());
  }

  // At the optimum every support coordinate blocks every decrement.
  for (const Rational& alpha :
       {Rational(1, 7), Rational(1, 2), Rational(1)}) {
    CHECK(probe_decrement(f, e1_opt, 0, alpha).has_value());
  }

  CHECK_THROWS_AS(probe_decrement(f, e1_opt, 0, Rational(2)),
                  std::invalid_argument);

  // Pair version: decrementing two coordinates of a strictly slack vector.
  const ValuedFunction wide = ValuedFunction::dense(
      2, 2,
      {Rational(0), Rational(3), Rational(3), Rational(3), Rational(6),
       Rational(6), Rational(3), Rational(6), Rational(6)});
  const SignedVector w = sv(2, {1, 1}, {1, 1});
  CHECK_FALSE(in_U(wide, w).has_value());
  CHECK_FALSE(probe_decrement2(wide, w, 0, 1, Rational(1, 2)).has_value());
  CHECK_THROWS_AS(probe_decrement2(wide, w, 0, 0, Rational(1, 2)),
                  std::invalid_argument);
}

TEST_CASE("minimizer extraction") {
  CHECK(extract_minimizer(e1_dense(), e1_opt) == lab(3, {1}));

  // Zero vector extracts the all-roots labeling.
  const ValuedFunction g = e2();
  CHECK(extract_minimizer(g, SignedVector::zeros(2, 2)) == Labeling::zero(2, 2));

  // Non-optimal points are rejected with a support mismatch.
  const ValuedFunction box = ValuedFunction::dense(
      2, 1, {Rational(0), Rational(1), Rational(1)});
  CHECK_THROWS_AS(extract_minimizer(box, sv(2, {1}, {1})), KsubError);
}

TEST_CASE("tight-family structure at random optima") {
  // Lemma-style invariants at minimum-norm duals found by max_dual.
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int k = seed % 2 == 0 ? 2 : 3;
    const int n = 1 + static_cast<int>(seed % 3);
    const ValuedFunction f = gen_unary(k, n, seed);
    const auto best = max_dual(f);
    REQUIRE(best.has_value());
    const SignedVector& v = best->vector;
    const TightFamily family = tight_family(f, v);

    // S(x, L) = supp(x) at the optimum.
    CHECK(family.negative_support() == v.support());

    // Unit-coordinate compliance: tight T sitting below the negative leaf at
    // i stays below N((x, L), i) wherever that has a leaf.
    for (int i : family.negative_support()) {
      const Labeling N = N_element(family, i);
      for (const Labeling& T : family.members) {
        if (!below(T[i], *family.negative_at(i))) continue;
        for (int j = 0; j < f.n(); ++j)
          if (N[j].is_leaf()) CHECK(below(T[j], N[j]));
      }
    }

    const Labeling extracted = extract_minimizer(f, v);
    CHECK(f.evaluate(extracted) == -v.norm());
    CHECK(f.evaluate(extracted) == brute_force_min(f).first);
    // The extracted labeling agrees with the negative leaves on the support.
    for (int i : v.support()) CHECK(extracted[i] == *family.negative_at(i));
  }
}
