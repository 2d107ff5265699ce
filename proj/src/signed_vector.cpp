#include "ksub/signed_vector.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace ksub {

SignedVector::SignedVector(int k, std::vector<Rational> x, std::vector<Label> leaves)
    : k_(k), x_(std::move(x)), leaves_(std::move(leaves)) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (x_.size() != leaves_.size())
    throw std::invalid_argument("x and L must have equal length");
  for (const Rational& xi : x_)
    if (xi < 0) throw std::invalid_argument("signed vector magnitudes must be >= 0");
  for (Label l : leaves_) {
    if (!l.is_leaf() || l.leaf_index() > k)
      throw std::invalid_argument("L entries must be leaves in 1..k");
  }
}

SignedVector SignedVector::zeros(int k, int n) {
  return SignedVector(k, std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)),
                      std::vector<Label>(static_cast<std::size_t>(n), Label::leaf(1)));
}

std::vector<int> SignedVector::support() const {
  std::vector<int> out;
  for (int i = 0; i < n(); ++i)
    if (x_[static_cast<std::size_t>(i)] > 0) out.push_back(i);
  return out;
}

Rational SignedVector::norm() const {
  Rational sum = 0;
  for (const Rational& xi : x_) sum += xi;
  return sum;
}

SignedVector SignedVector::with_decrement(int i, const Rational& alpha) const {
  std::vector<Rational> x = x_;
  x[static_cast<std::size_t>(i)] -= alpha;
  return SignedVector(k_, std::move(x), leaves_);
}

bool anti_aligned(int k, Label Li, Label t) {
  if (!t.is_leaf()) return false;
  return k == 1 || t != Li;
}

Rational eval_signed(const SignedVector& v, const Labeling& T) {
  if (T.k() != v.k() || T.n() != v.n())
    throw std::invalid_argument("labeling has mismatched (k, n)");
  Rational sum = 0;
  for (int i = 0; i < v.n(); ++i) {
    const Label t = T[i];
    if (t.is_root()) continue;
    if (anti_aligned(v.k(), v.leaf(i), t))
      sum -= v.magnitude(i);
    else
      sum += v.magnitude(i);
  }
  return sum;
}

Rational dual_objective(const SignedVector& v) { return -v.norm(); }

std::optional<Labeling> in_U(const ValuedFunction& f, const SignedVector& v,
                             std::uint64_t budget) {
  if (f.k() != v.k() || f.n() != v.n())
    throw std::invalid_argument("function and vector have mismatched (k, n)");
  for (const Labeling& T : LabelingRange(f.k(), f.n(), budget)) {
    if (eval_signed(v, T) > f.evaluate(T)) return T;
  }
  return std::nullopt;
}

std::optional<Labeling> in_U_K(const ValuedFunction& f, const SignedVector& v,
                               const Labeling& K, std::uint64_t budget) {
  if (f.k() != v.k() || f.n() != v.n())
    throw std::invalid_argument("function and vector have mismatched (k, n)");
  for (const Labeling& T : BelowRange(K, budget)) {
    if (eval_signed(v, T) > f.evaluate(T)) return T;
  }
  return std::nullopt;
}

std::optional<std::string> in_B_K(const ValuedFunction& f, const SignedVector& v,
                                  const Labeling& K, std::uint64_t budget) {
  if (const auto bad = in_U_K(f, v, K, budget)) {
    return "dominance fails at T = " + bad->to_string() + " (" +
           to_string(eval_signed(v, *bad)) + " > " + to_string(f.evaluate(*bad)) + ")";
  }
  const Rational at_K = eval_signed(v, K);
  const Rational fK = f.evaluate(K);
  if (at_K != fK) {
    return "not tight at K: evaluation " + to_string(at_K) + " vs f(K) = " +
           to_string(fK);
  }
  return std::nullopt;
}

namespace {

Label smallest_other_leaf(int k, Label avoid) {
  for (int l = 1; l <= k; ++l) {
    if (Label::leaf(l) != avoid) return Label::leaf(l);
  }
  throw std::logic_error("no alternative leaf exists");
}

}  // namespace

SignedVector greedy_base(const ValuedFunction& f, const Labeling& K,
                         const std::vector<int>& order) {
  if (f.k() < 2)
    throw std::invalid_argument("greedy_base requires k >= 2; the base set can "
                                "be empty for k = 1");
  if (!K.all_leaves() || K.k() != f.k() || K.n() != f.n())
    throw std::invalid_argument("K must be an all-leaf labeling matching f");
  if (f.value_at_zero() != 0)
    throw std::invalid_argument("greedy_base requires a normalized function");
  const int n = f.n();
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("order must be a permutation of 0..n-1");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int i : order) {
    if (i < 0 || i >= n || seen[static_cast<std::size_t>(i)])
      throw std::invalid_argument("order must be a permutation of 0..n-1");
    seen[static_cast<std::size_t>(i)] = true;
  }

  Labeling current = Labeling::zero(f.k(), n);
  Rational previous = 0;
  std::vector<Rational> y(static_cast<std::size_t>(n));
  for (int i : order) {
    std::vector<Label> entries = current.entries();
    entries[static_cast<std::size_t>(i)] = K[i];
    current = Labeling(f.k(), std::move(entries));
    const Rational value = f.evaluate(current);
    y[static_cast<std::size_t>(i)] = value - previous;
    previous = value;
  }

  std::vector<Rational> x(static_cast<std::size_t>(n));
  std::vector<Label> leaves(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Rational& yi = y[static_cast<std::size_t>(i)];
    if (yi > 0) {
      x[static_cast<std::size_t>(i)] = yi;
      leaves[static_cast<std::size_t>(i)] = K[i];
    } else if (yi < 0) {
      x[static_cast<std::size_t>(i)] = -yi;
      leaves[static_cast<std::size_t>(i)] = smallest_other_leaf(f.k(), K[i]);
    } else {
      leaves[static_cast<std::size_t>(i)] = K[i];
    }
  }
  return SignedVector(f.k(), std::move(x), std::move(leaves));
}

SignedVector greedy_base(const ValuedFunction& f, const Labeling& K) {
  std::vector<int> order(static_cast<std::size_t>(f.n()));
  for (int i = 0; i < f.n(); ++i) order[static_cast<std::size_t>(i)] = i;
  return greedy_base(f, K, order);
}

bool TightFamily::contains(const Labeling& T) const {
  return std::binary_search(
      members.begin(), members.end(), T,
      [](const Labeling& a, const Labeling& b) { return a < b; });
}

std::vector<int> TightFamily::negative_support() const {
  std::vector<int> out;
  out.reserve(negative_leaf.size());
  for (const auto& [i, l] : negative_leaf) out.push_back(i);
  return out;
}

std::optional<Label> TightFamily::negative_at(int i) const {
  for (const auto& [j, l] : negative_leaf)
    if (j == i) return l;
  return std::nullopt;
}

TightFamily tight_family(const ValuedFunction& f, const SignedVector& v,
                         std::uint64_t budget) {
  TightFamily family;
  std::unordered_set<std::uint64_t> indices;
  for (const Labeling& T : LabelingRange(f.k(), f.n(), budget)) {
    const Rational lhs = eval_signed(v, T);
    const Rational rhs = f.evaluate(T);
    if (lhs > rhs)
      throw KsubError("vector is not in U(f): violated at T = " + T.to_string());
    if (lhs == rhs) {
      indices.insert(labeling_index(T));
      family.members.push_back(T);
    }
  }

  for (const Labeling& T : family.members) {
    for (const Labeling& U : family.members) {
      if (!indices.count(labeling_index(meet_vec(T, U))) ||
          !indices.count(labeling_index(join_vec(T, U)))) {
        throw KsubError("tight family not closed under meet/join at T = " +
                        T.to_string() + ", U = " + U.to_string() +
                        " (f is not k-submodular or v is not in U(f))");
      }
    }
  }

  for (int i : v.support()) {
    std::optional<Label> negative;
    for (const Labeling& T : family.members) {
      if (!anti_aligned(v.k(), v.leaf(i), T[i])) continue;
      if (negative.has_value() && *negative != T[i]) {
        throw KsubError("two distinct anti-aligned leaves at coordinate " +
                        std::to_string(i + 1) +
                        " (f is not k-submodular or v is not in U(f))");
      }
      negative = T[i];
    }
    if (negative.has_value()) family.negative_leaf.emplace_back(i, *negative);
  }
  return family;
}

Labeling N_element(const TightFamily& family, int i) {
  const std::optional<Label> negative = family.negative_at(i);
  if (!negative.has_value())
    throw std::invalid_argument("coordinate " + std::to_string(i + 1) +
                                " is not in S(x, L)");
  std::optional<Labeling> acc;
  for (const Labeling& T : family.members) {
    if (T[i] != *negative) continue;
    acc = acc.has_value() ? meet_vec(*acc, T) : T;
  }
  return *acc;
}

Labeling N_element(const ValuedFunction& f, const SignedVector& v, int i,
                   std::uint64_t budget) {
  return N_element(tight_family(f, v, budget), i);
}

std::optional<Labeling> probe_decrement(const ValuedFunction& f,
                                        const SignedVector& v, int i,
                                        const Rational& alpha,
                                        std::uint64_t budget) {
  if (i < 0 || i >= v.n()) throw std::invalid_argument("coordinate out of range");
  if (alpha <= 0 || alpha > v.magnitude(i))
    throw std::invalid_argument("alpha must lie in (0, x_i]");
  return in_U(f, v.with_decrement(i, alpha), budget);
}

std::optional<Labeling> probe_decrement2(const ValuedFunction& f,
                                         const SignedVector& v, int i, int j,
                                         const Rational& alpha,
                                         std::uint64_t budget) {
  if (i < 0 || i >= v.n() || j < 0 || j >= v.n() || i == j)
    throw std::invalid_argument("coordinates out of range");
  if (alpha <= 0 || alpha > v.magnitude(i) || alpha > v.magnitude(j))
    throw std::invalid_argument("alpha must lie in (0, min(x_i, x_j)]");
  return in_U(f, v.with_decrement(i, alpha).with_decrement(j, alpha), budget);
}

Labeling extract_minimizer(const ValuedFunction& f, const SignedVector& v,
                           std::uint64_t budget) {
  const TightFamily family = tight_family(f, v, budget);
  const std::vector<int> support = v.support();

  for (int i : support) {
    if (!family.negative_at(i).has_value()) {
      throw KsubError("S(x, L) != supp(x): coordinate " + std::to_string(i + 1) +
                      " has no anti-aligned tight element (v is not a "
                      "minimum-norm dual point)");
    }
  }

  if (support.empty()) return Labeling::zero(f.k(), f.n());

  std::vector<Labeling> parts;
  parts.reserve(support.size());
  for (int i : support) parts.push_back(N_element(family, i));

  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      for (int m = 0; m < f.n(); ++m) {
        if (parts[a][m].is_leaf() && parts[b][m].is_leaf() &&
            parts[a][m] != parts[b][m]) {
          throw KsubError(
              "join is not associative on the N-elements: coordinates " +
              std::to_string(support[a] + 1) + " and " +
              std::to_string(support[b] + 1) + " disagree at " +
              std::to_string(m + 1));
        }
      }
    }
  }

  Labeling T = parts.front();
  for (std::size_t a = 1; a < parts.size(); ++a) T = join_vec(T, parts[a]);

  const Rational value = f.evaluate(T);
  if (value != -v.norm())
    throw KsubError("extracted labeling misses -||x||; the dual point is not "
                    "optimal");
  return T;
}

}  // namespace ksub
