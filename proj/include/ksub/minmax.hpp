#ifndef KSUB_MINMAX_HPP
#define KSUB_MINMAX_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ksub/lp.hpp"
#include "ksub/signed_vector.hpp"
#include "ksub/valued_function.hpp"

namespace ksub {

struct FixedDualResult {
  bool feasible = false;
  Rational objective = 0;  // -||x|| at the optimum
  std::vector<Rational> x;
  long pivots = 0;
};

// Maximizes -||x|| over the slice of U(f) with the given distinguished
// leaves: an exact LP with one row per sign pattern of the evaluation.
FixedDualResult max_dual_fixed_L(const ValuedFunction& f, const Labeling& L,
                                 std::uint64_t budget = kDefaultBudget);

struct DualOptimum {
  Rational objective = 0;
  SignedVector vector;
};

// Maximizes -||x|| over all of U(f) by enumerating the k^n leaf choices;
// ties keep the first L in enumeration order. nullopt when U(f) is empty
// (possible only for non-k-submodular input).
std::optional<DualOptimum> max_dual(const ValuedFunction& f,
                                    std::uint64_t budget = kDefaultBudget);

// Same maximum over the integer points of U(f); exhaustive box search with
// per-coordinate bounds read off the singleton constraints. Requires an
// integer-valued f.
std::optional<DualOptimum> max_dual_integer(const ValuedFunction& f,
                                            std::uint64_t budget = kDefaultBudget);

// A matched primal/dual pair with coinciding objectives.
struct Certificate {
  Labeling primal;
  SignedVector dual;
  Rational value;
};

struct Discrepancy {
  std::string detail;
  std::optional<Rational> primal_value;
  std::optional<Rational> dual_value;
  std::optional<ViolationWitness> witness;  // set when f fails the submodularity check
};

using MinMaxResult = std::variant<Certificate, Discrepancy>;

// Runs the primal brute force and the dual maximization, demands exact
// equality, and cross-validates by extracting a minimizer from the dual
// optimum. Returns a Discrepancy report instead of throwing, so the tool can
// double as a falsification harness. f must be normalized.
MinMaxResult verify_minmax(const ValuedFunction& f,
                           std::uint64_t budget = kDefaultBudget);

// Text block: value, primal labeling, dual x, dual L, extracted minimizer,
// and the tight labelings of the dual optimum.
std::string serialize_certificate(const ValuedFunction& f, const Certificate& cert,
                                  std::uint64_t budget = kDefaultBudget);

}  // namespace ksub

#endif  // KSUB_MINMAX_HPP
