#ifndef KSUB_LABEL_HPP
#define KSUB_LABEL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ksub/rational.hpp"

namespace ksub {

// One value of the star domain with k leaves: either the root or a leaf
// indexed 1..k. The root serializes as token 0, leaves as their index.
class Label {
 public:
  constexpr Label() : token_(0) {}

  static constexpr Label root() { return Label(); }
  static Label leaf(int index);

  bool is_root() const { return token_ == 0; }
  bool is_leaf() const { return token_ != 0; }
  // 1-based leaf index; only meaningful when is_leaf().
  int leaf_index() const { return token_; }
  // 0 for the root, the leaf index otherwise.
  int token() const { return token_; }

  friend auto operator<=>(Label, Label) = default;

 private:
  explicit constexpr Label(int token) : token_(token) {}
  int token_;
};

// meet: idempotent, any two distinct values among {leaves, root} collapse to
// the root except a value with itself.
inline Label meet(Label s, Label t) { return s == t ? s : Label::root(); }

// join: idempotent, the root is the identity, two distinct leaves give root.
inline Label join(Label s, Label t) {
  if (s == t) return s;
  if (s.is_root()) return t;
  if (t.is_root()) return s;
  return Label::root();
}

// Partial order: root below everything, leaves pairwise incomparable.
inline bool below(Label s, Label t) { return s.is_root() || s == t; }

// An element of the product star domain: n labels over a common leaf count k.
class Labeling {
 public:
  Labeling(int k, std::vector<Label> entries);
  // All-roots labeling of length n.
  static Labeling zero(int k, int n);
  // Convenience: build from integer tokens (0 = root, 1..k = leaf).
  static Labeling from_tokens(int k, const std::vector<int>& tokens);

  int k() const { return k_; }
  int n() const { return static_cast<int>(entries_.size()); }
  Label operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<Label>& entries() const { return entries_; }

  bool is_zero() const;
  bool all_leaves() const;
  // Coordinates (0-based) holding a leaf.
  std::vector<int> support() const;

  friend bool operator==(const Labeling&, const Labeling&) = default;
  // Lexicographic by tokens; requires equal (k, n) for a meaningful order.
  bool operator<(const Labeling& other) const;

  // Space-separated tokens, e.g. "0 2 1".
  std::string to_string() const;

 private:
  int k_;
  std::vector<Label> entries_;
};

std::ostream& operator<<(std::ostream& os, const Labeling& T);

Labeling meet_vec(const Labeling& T, const Labeling& U);
Labeling join_vec(const Labeling& T, const Labeling& U);
bool below_vec(const Labeling& T, const Labeling& U);

// |{T_i, U_i} \ {root}| <= 1 at every coordinate.
bool compatible(const Labeling& T, const Labeling& U);
// T and U agree everywhere except possibly at coordinate i (0-based).
bool i_similar(const Labeling& T, const Labeling& U, int i);

// Number of labelings (k+1)^n; throws BudgetExceeded when it overflows the
// budget (and std::overflow_error territory is folded into the same check).
std::uint64_t labeling_count(int k, int n, std::uint64_t budget = kDefaultBudget);

// Rank of T in the enumeration order below.
std::uint64_t labeling_index(const Labeling& T);
Labeling labeling_from_index(int k, int n, std::uint64_t index);

// Enumerates all (k+1)^n labelings exactly once, lexicographically with
// root < leaf 1 < ... < leaf k and the last coordinate varying fastest.
class LabelingRange {
 public:
  LabelingRange(int k, int n, std::uint64_t budget = kDefaultBudget);

  class iterator {
   public:
    iterator(int k, int n, std::uint64_t index) : k_(k), n_(n), index_(index) {}
    Labeling operator*() const { return labeling_from_index(k_, n_, index_); }
    iterator& operator++() { ++index_; return *this; }
    bool operator!=(const iterator& other) const { return index_ != other.index_; }

   private:
    int k_;
    int n_;
    std::uint64_t index_;
  };

  iterator begin() const { return iterator(k_, n_, 0); }
  iterator end() const { return iterator(k_, n_, count_); }
  std::uint64_t size() const { return count_; }

 private:
  int k_;
  int n_;
  std::uint64_t count_;
};

// Enumerates the 2^n labelings T <= K for an all-leaf K, in the order induced
// by the global one (per coordinate root < K_i, last coordinate fastest).
// Throws std::invalid_argument when K has a root coordinate.
class BelowRange {
 public:
  explicit BelowRange(const Labeling& K, std::uint64_t budget = kDefaultBudget);

  class iterator {
   public:
    iterator(const Labeling* K, std::uint64_t mask) : K_(K), mask_(mask) {}
    Labeling operator*() const;
    iterator& operator++() { ++mask_; return *this; }
    bool operator!=(const iterator& other) const { return mask_ != other.mask_; }

   private:
    const Labeling* K_;
    std::uint64_t mask_;
  };

  iterator begin() const { return iterator(&K_, 0); }
  iterator end() const { return iterator(&K_, count_); }
  std::uint64_t size() const { return count_; }

 private:
  Labeling K_;
  std::uint64_t count_;
};

}  // namespace ksub

#endif  // KSUB_LABEL_HPP
