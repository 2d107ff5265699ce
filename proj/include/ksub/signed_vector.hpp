#ifndef KSUB_SIGNED_VECTOR_HPP
#define KSUB_SIGNED_VECTOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "ksub/valued_function.hpp"

namespace ksub {

// A dual point (x, L): nonnegative magnitudes with one distinguished leaf per
// coordinate. Its induced evaluation contributes 0 at the root, +x_i at L_i
// and -x_i at any other leaf. For k = 1 the single leaf always contributes
// -x_i, which makes the k = 1 theory coincide with the classical submodular
// one.
class SignedVector {
 public:
  SignedVector(int k, std::vector<Rational> x, std::vector<Label> leaves);
  static SignedVector zeros(int k, int n);

  int k() const { return k_; }
  int n() const { return static_cast<int>(x_.size()); }
  const std::vector<Rational>& x() const { return x_; }
  const std::vector<Label>& leaves() const { return leaves_; }
  Label leaf(int i) const { return leaves_[static_cast<std::size_t>(i)]; }
  const Rational& magnitude(int i) const { return x_[static_cast<std::size_t>(i)]; }

  std::vector<int> support() const;
  Rational norm() const;

  SignedVector with_decrement(int i, const Rational& alpha) const;

 private:
  int k_;
  std::vector<Rational> x_;
  std::vector<Label> leaves_;
};

// True when label t contributes -x_i against distinguished leaf Li.
bool anti_aligned(int k, Label Li, Label t);

Rational eval_signed(const SignedVector& v, const Labeling& T);

// -||x||, the objective the dual side maximizes.
Rational dual_objective(const SignedVector& v);

// First labeling (in enumeration order) where the evaluation exceeds f, or
// nullopt when v lies in U(f).
std::optional<Labeling> in_U(const ValuedFunction& f, const SignedVector& v,
                             std::uint64_t budget = kDefaultBudget);

// Same check restricted to T <= K for an all-leaf K.
std::optional<Labeling> in_U_K(const ValuedFunction& f, const SignedVector& v,
                               const Labeling& K,
                               std::uint64_t budget = kDefaultBudget);

// U_K membership plus tightness at K; a reason when either fails.
std::optional<std::string> in_B_K(const ValuedFunction& f, const SignedVector& v,
                                  const Labeling& K,
                                  std::uint64_t budget = kDefaultBudget);

// Greedy vertex of the base polyhedron of the restriction below K, mapped to
// a signed vector in B_K(f). Requires k >= 2 (the base set can be empty for
// k = 1), a normalized f, and an all-leaf K; order is a permutation of
// 0..n-1. Non-submodularity of f is only detected by later B_K checks.
SignedVector greedy_base(const ValuedFunction& f, const Labeling& K,
                         const std::vector<int>& order);
SignedVector greedy_base(const ValuedFunction& f, const Labeling& K);

// The labelings where the dual evaluation of v meets f exactly, with the
// derived negative-leaf data. members are listed in enumeration order;
// negative_leaf maps each coordinate of S(x, L) to its unique anti-aligned
// leaf occurring among tight elements.
struct TightFamily {
  std::vector<Labeling> members;
  std::vector<std::pair<int, Label>> negative_leaf;

  bool contains(const Labeling& T) const;
  std::vector<int> negative_support() const;
  std::optional<Label> negative_at(int i) const;
};

// Enumerates the tight family, verifying closure under meet/join and the
// uniqueness of the anti-aligned leaf per support coordinate. Throws
// KsubError when v lies outside U(f) or either structural property fails.
TightFamily tight_family(const ValuedFunction& f, const SignedVector& v,
                         std::uint64_t budget = kDefaultBudget);

// Meet of all tight elements carrying the negative leaf at coordinate i.
Labeling N_element(const TightFamily& family, int i);
Labeling N_element(const ValuedFunction& f, const SignedVector& v, int i,
                   std::uint64_t budget = kDefaultBudget);

// Membership of (x - alpha e_i, L) in U(f); alpha must not exceed x_i.
std::optional<Labeling> probe_decrement(const ValuedFunction& f,
                                        const SignedVector& v, int i,
                                        const Rational& alpha,
                                        std::uint64_t budget = kDefaultBudget);
std::optional<Labeling> probe_decrement2(const ValuedFunction& f,
                                         const SignedVector& v, int i, int j,
                                         const Rational& alpha,
                                         std::uint64_t budget = kDefaultBudget);

// Joins the N-elements over the support into a labeling T with
// f(T) = -||x||. Requires v to be a minimum-norm point of U(f); the two
// structural preconditions (S(x, L) = supp(x), join-compatibility of the
// N-elements) are verified and reported via KsubError when they fail.
Labeling extract_minimizer(const ValuedFunction& f, const SignedVector& v,
                           std::uint64_t budget = kDefaultBudget);

}  // namespace ksub

#endif  // KSUB_SIGNED_VECTOR_HPP
