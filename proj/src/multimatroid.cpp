#include "ksub/multimatroid.hpp"

#include <algorithm>
#include <stdexcept>

namespace ksub {

namespace {

void require_rank_values(const ValuedFunction& r, std::uint64_t budget) {
  const std::uint64_t count = labeling_count(r.k(), r.n(), budget);
  for (std::uint64_t i = 0; i < count; ++i) {
    const Rational v = r.evaluate_index(i);
    if (!is_integer(v) || v < 0)
      throw std::invalid_argument(
          "rank functions take nonnegative integer values");
  }
}

// Index of the unique differing coordinate, or -1 when none / several.
int single_diff(const Labeling& T, const Labeling& U) {
  int where = -1;
  for (int i = 0; i < T.n(); ++i) {
    if (T[i] != U[i]) {
      if (where >= 0) return -1;
      where = i;
    }
  }
  return where;
}

}  // namespace

std::optional<RankAxiomViolation> check_rank_axioms(const ValuedFunction& r,
                                                    std::uint64_t budget) {
  require_rank_values(r, budget);
  const std::uint64_t count = labeling_count(r.k(), r.n(), budget);
  if (count > budget / count)
    throw BudgetExceeded("pair scan exceeds enumeration budget");

  const Labeling zero = Labeling::zero(r.k(), r.n());
  if (r.evaluate(zero) != 0) {
    return RankAxiomViolation{1, zero, zero, r.evaluate(zero), Rational(0),
                              "r(0) must be 0"};
  }

  std::vector<Labeling> all;
  std::vector<Rational> vals;
  all.reserve(count);
  vals.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    all.push_back(labeling_from_index(r.k(), r.n(), i));
    vals.push_back(r.evaluate_index(i));
  }

  // Axiom 2: unit increase along a root-to-leaf move at one coordinate.
  for (std::uint64_t a = 0; a < count; ++a) {
    for (std::uint64_t b = 0; b < count; ++b) {
      const int d = single_diff(all[a], all[b]);
      if (d < 0 || !all[a][d].is_root() || !all[b][d].is_leaf()) continue;
      if (vals[a] > vals[b]) {
        return RankAxiomViolation{2, all[a], all[b], vals[a], vals[b],
                                  "r(T) <= r(U) fails"};
      }
      if (vals[b] > vals[a] + 1) {
        return RankAxiomViolation{2, all[a], all[b], vals[b], vals[a] + 1,
                                  "r(U) <= r(T) + 1 fails"};
      }
    }
  }

  // Axiom 3: submodularity on compatible pairs.
  for (std::uint64_t a = 0; a < count; ++a) {
    for (std::uint64_t b = 0; b < count; ++b) {
      if (!compatible(all[a], all[b])) continue;
      const Rational lhs = vals[labeling_index(meet_vec(all[a], all[b]))] +
                           vals[labeling_index(join_vec(all[a], all[b]))];
      const Rational rhs = vals[a] + vals[b];
      if (lhs > rhs) {
        return RankAxiomViolation{3, all[a], all[b], lhs, rhs,
                                  "submodularity fails on a compatible pair"};
      }
    }
  }

  // Axiom 4: strict submodularity across two distinct leaves at one
  // coordinate.
  for (std::uint64_t a = 0; a < count; ++a) {
    for (std::uint64_t b = 0; b < count; ++b) {
      const int d = single_diff(all[a], all[b]);
      if (d < 0 || !all[a][d].is_leaf() || !all[b][d].is_leaf()) continue;
      const Rational lhs = vals[labeling_index(meet_vec(all[a], all[b]))] +
                           vals[labeling_index(join_vec(all[a], all[b]))];
      const Rational rhs = vals[a] + vals[b] - 1;
      if (lhs > rhs) {
        return RankAxiomViolation{4, all[a], all[b], lhs, rhs,
                                  "strict submodularity fails"};
      }
    }
  }
  return std::nullopt;
}

RankBridgeReport rank_is_k_submodular(const ValuedFunction& r,
                                      std::uint64_t budget) {
  RankBridgeReport report;
  try {
    report.axioms = check_rank_axioms(r, budget);
  } catch (const std::invalid_argument& e) {
    const Labeling zero = Labeling::zero(r.k(), r.n());
    report.axioms =
        RankAxiomViolation{0, zero, zero, Rational(0), Rational(0), e.what()};
  }
  report.pairwise = check_pairwise(r, budget);
  report.submodular = check_k_submodular(r, budget);
  report.is_rank = !report.axioms.has_value();
  report.consistent = !report.is_rank || (!report.pairwise.has_value() &&
                                          !report.submodular.has_value());
  return report;
}

ValuedFunction gen_free_rank(int k, int n, std::optional<int> cap) {
  if (cap.has_value() && *cap < 0)
    throw std::invalid_argument("cap must be nonnegative");
  const std::uint64_t count = labeling_count(k, n);
  std::vector<Rational> values;
  values.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const Labeling T = labeling_from_index(k, n, i);
    long rank = static_cast<long>(T.support().size());
    if (cap.has_value()) rank = std::min(rank, static_cast<long>(*cap));
    values.emplace_back(rank);
  }
  return ValuedFunction::dense(k, n, std::move(values));
}

}  // namespace ksub
