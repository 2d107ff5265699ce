#ifndef KSUB_MULTIMATROID_HPP
#define KSUB_MULTIMATROID_HPP

#include <optional>
#include <string>

#include "ksub/valued_function.hpp"

namespace ksub {

// First failing rank axiom (1..4) with the witnessing pair and the two sides
// of the violated inequality. axiom 0 marks a value-domain failure (negative
// or fractional entries), reported by rank_is_k_submodular instead of a
// throw.
struct RankAxiomViolation {
  int axiom;
  Labeling T;
  Labeling U;
  Rational lhs;
  Rational rhs;
  std::string detail;
};

// Verifies, in order: r(0) = 0; unit increase on pairs differing at one
// root-vs-leaf coordinate; submodularity on compatible pairs; strict
// submodularity on pairs differing at one coordinate with two distinct
// leaves. Requires nonnegative integer values.
std::optional<RankAxiomViolation> check_rank_axioms(
    const ValuedFunction& r, std::uint64_t budget = kDefaultBudget);

struct RankBridgeReport {
  std::optional<RankAxiomViolation> axioms;
  std::optional<ViolationWitness> pairwise;
  std::optional<ViolationWitness> submodular;
  bool is_rank = false;
  // False only when the axioms pass but a submodularity check fails, which
  // would contradict the bridge theorem.
  bool consistent = true;
};

// Runs the axiom check plus both submodularity routes and reports all three
// verdicts.
RankBridgeReport rank_is_k_submodular(const ValuedFunction& r,
                                      std::uint64_t budget = kDefaultBudget);

// r(T) = min(|supp T|, cap); cap absent means uncapped.
ValuedFunction gen_free_rank(int k, int n, std::optional<int> cap = std::nullopt);

}  // namespace ksub

#endif  // KSUB_MULTIMATROID_HPP
