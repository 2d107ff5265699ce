#ifndef KSUB_VALUED_FUNCTION_HPP
#define KSUB_VALUED_FUNCTION_HPP

#include <optional>
#include <utility>
#include <vector>

#include "ksub/label.hpp"
#include "ksub/rational.hpp"

namespace ksub {

// Counterexample to one of the (in)equalities f(T meet U) + f(T join U) vs
// f(T) + f(U); lhs is the meet/join side, rhs the plain side.
struct ViolationWitness {
  Labeling T;
  Labeling U;
  Rational lhs;
  Rational rhs;
};

// An exact-rational function on the product star domain, backed either by a
// dense table over all (k+1)^n labelings or by a sum of local terms.
class ValuedFunction {
 public:
  struct Term {
    std::vector<int> scope;       // distinct 0-based coordinates
    std::vector<Rational> table;  // (k+1)^|scope| values in enumeration order
  };

  // values[i] is the value at labeling_from_index(k, n, i).
  static ValuedFunction dense(int k, int n, std::vector<Rational> values);
  static ValuedFunction sum_of_terms(int k, int n, std::vector<Term> terms);

  int k() const { return k_; }
  int n() const { return n_; }
  bool is_dense() const { return dense_backend_; }
  const std::vector<Term>& terms() const { return terms_; }

  Rational evaluate(const Labeling& T) const;
  // Value at labeling_from_index(k, n, index).
  Rational evaluate_index(std::uint64_t index) const;
  Rational value_at_zero() const;

  // Shifts so that the all-roots labeling maps to 0; the subtracted amount is
  // written to *offset when given. Identity when already normalized.
  ValuedFunction normalized(Rational* offset = nullptr) const;

  // Dense copy; expands a sum of terms by full enumeration.
  ValuedFunction expanded(std::uint64_t budget = kDefaultBudget) const;

  // Pins coordinate i (0-based) to t, yielding a function on n-1 coordinates.
  ValuedFunction restrict_fix(int i, Label t) const;

  bool integer_valued(std::uint64_t budget = kDefaultBudget) const;

 private:
  ValuedFunction(int k, int n) : k_(k), n_(n) {}

  int k_;
  int n_;
  bool dense_backend_ = true;
  std::vector<Rational> values_;
  std::vector<Term> terms_;
  Rational constant_ = 0;  // additive shift, used by the term backend
};

std::optional<ViolationWitness> check_k_submodular(
    const ValuedFunction& f, std::uint64_t budget = kDefaultBudget);
std::optional<ViolationWitness> check_k_supermodular(
    const ValuedFunction& f, std::uint64_t budget = kDefaultBudget);
std::optional<ViolationWitness> check_k_modular(
    const ValuedFunction& f, std::uint64_t budget = kDefaultBudget);

// Tests the submodular inequality only on compatible pairs and on pairs that
// differ at a single coordinate holding two distinct leaves. Agrees with
// check_k_submodular on every function.
std::optional<ViolationWitness> check_pairwise(
    const ValuedFunction& f, std::uint64_t budget = kDefaultBudget);

// Exact minimum and the first minimizer in enumeration order.
std::pair<Rational, Labeling> brute_force_min(
    const ValuedFunction& f, std::uint64_t budget = kDefaultBudget);

// Sum of per-coordinate unary terms with g(root) = 0 and g(a) + g(b) >= 0 for
// distinct leaves a, b; always k-submodular and normalized.
ValuedFunction gen_unary(int k, int n, std::uint64_t seed);

struct RejectionStats {
  int attempts = 0;
};

// Uniform integer tables in [-range, range] with f(0) = 0, redrawn until the
// submodularity check passes. Throws KsubError at the retry limit.
ValuedFunction gen_rejection(int k, int n, int range, std::uint64_t seed,
                             int retry_limit = 10000,
                             RejectionStats* stats = nullptr);

}  // namespace ksub

#endif  // KSUB_VALUED_FUNCTION_HPP
