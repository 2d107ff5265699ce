#ifndef KSUB_FULL_VECTOR_HPP
#define KSUB_FULL_VECTOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "ksub/signed_vector.hpp"
#include "ksub/valued_function.hpp"

namespace ksub {

// A point of the full-dimensional space: one rational per coordinate-leaf
// pair, laid out as n rows of k entries.
class FullVector {
 public:
  FullVector(int k, std::vector<std::vector<Rational>> rows);
  static FullVector zeros(int k, int n);

  int k() const { return k_; }
  int n() const { return static_cast<int>(rows_.size()); }
  const Rational& at(int i, int leaf_index) const {
    return rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(leaf_index - 1)];
  }
  Rational& at(int i, int leaf_index) {
    return rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(leaf_index - 1)];
  }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }

  friend bool operator==(const FullVector&, const FullVector&) = default;

 private:
  int k_;
  std::vector<std::vector<Rational>> rows_;
};

Rational eval_full(const FullVector& x, const Labeling& T);

// One inequality of P(f): either a labeling row or a nonpositivity row on a
// leaf pair of one coordinate.
struct PairRow {
  int i;  // 0-based coordinate
  int p;  // leaf indices, p < q
  int q;

  friend bool operator==(const PairRow&, const PairRow&) = default;
};

struct PolyViolation {
  enum class Kind { kLabelingRow, kPairRow };
  Kind kind;
  std::optional<Labeling> labeling;
  std::optional<PairRow> pair;
  Rational lhs;
  Rational rhs;
};

// Membership in P(f): labeling rows plus all pair rows.
std::optional<PolyViolation> in_P(const ValuedFunction& f, const FullVector& x,
                                  std::uint64_t budget = kDefaultBudget);
// Membership in the comparison polyhedron: labeling rows only.
std::optional<PolyViolation> in_P_FT(const ValuedFunction& f, const FullVector& x,
                                     std::uint64_t budget = kDefaultBudget);

// Row pattern (+a at one leaf, -a elsewhere, a >= 0); for k = 1 the single
// entry must be <= 0.
bool is_unified(const FullVector& x);

FullVector embed_signed(const SignedVector& v);
// Inverse of the embedding; rows of zeros pick leaf 1. Throws KsubError on
// non-unified input.
SignedVector project_unified(const FullVector& x);

// Sum over coordinates of the largest absolute row entry.
Rational norm_1inf(const FullVector& x);

struct TightFull {
  std::vector<Labeling> labelings;  // enumeration order
  std::vector<PairRow> pairs;       // ascending (i, p, q)
};

// Tight labeling rows and tight pair rows at x in P(f); verifies that the
// labeling part is closed under meet/join and that f is k-modular on it.
TightFull tight_full(const ValuedFunction& f, const FullVector& x,
                     std::uint64_t budget = kDefaultBudget);

struct Basis {
  std::vector<Labeling> b1;
  std::vector<PairRow> b2;
};

// |b1| + |b2| = kn tight rows whose coefficient matrix is nonsingular, which
// pins x as the unique solution.
bool is_basis(const ValuedFunction& f, const FullVector& x, const Basis& basis);

// Replaces T in the basis by the first of {S meet T, S join T, the (i,
// {S_i, T_i}) pair rows by ascending i} that yields a basis again. Throws
// KsubError when none does.
Basis exchange_step(const ValuedFunction& f, const FullVector& x, const Basis& basis,
                    const Labeling& S, const Labeling& T);

// Maximizes the strictly positive objective c over P(f) and purifies the
// optimal point to a vertex (kn independent tight rows).
FullVector vertex_by_lp(const ValuedFunction& f, const FullVector& c,
                        std::uint64_t budget = kDefaultBudget);

// Greedily selects kn independent tight rows at a vertex x; labeling rows in
// enumeration order are preferred over pair rows. Throws when x is not a
// vertex.
Basis extract_basis(const ValuedFunction& f, const FullVector& x,
                    std::uint64_t budget = kDefaultBudget);

struct FtReport {
  Rational ft_value;     // max of -||.||_{1,inf} over the comparison polyhedron
  Rational primal_value; // brute-force minimum
  Rational dual_value;   // max_dual objective
  bool equal = false;
  bool chain_ok = false; // embedded dual optimum passed in_P and in_P_FT
  FullVector point;
  long pivots = 0;
};

// Single epigraph LP over the labeling rows; checks the three-way equality
// and the inclusion chain on the embedded dual optimum.
FtReport verify_ft(const ValuedFunction& f, std::uint64_t budget = kDefaultBudget);

}  // namespace ksub

#endif  // KSUB_FULL_VECTOR_HPP
