#include "ksub/minmax.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ksub {

namespace {

void require_all_leaf(const ValuedFunction& f, const Labeling& L) {
  if (L.k() != f.k() || L.n() != f.n() || !L.all_leaves())
    throw std::invalid_argument("L must be an all-leaf labeling matching f");
}

// Rows of the fixed-L feasibility system, collapsed by sign pattern: every
// labeling T induces coefficients in {0, +1, -1}^n, and only the smallest
// right-hand side per pattern can bind.
std::vector<LpRow> pattern_rows(const ValuedFunction& f, const Labeling& L,
                                std::uint64_t budget) {
  const int n = f.n();
  std::uint64_t num_patterns = 1;
  for (int i = 0; i < n; ++i) {
    if (num_patterns > budget / 3)
      throw BudgetExceeded("3^n sign patterns exceed the budget");
    num_patterns *= 3;
  }
  std::vector<std::optional<Rational>> best(num_patterns);

  for (const Labeling& T : LabelingRange(f.k(), f.n(), budget)) {
    std::uint64_t pattern = 0;
    for (int i = 0; i < n; ++i) {
      const Label t = T[i];
      const int digit = t.is_root() ? 0 : anti_aligned(f.k(), L[i], t) ? 2 : 1;
      pattern = pattern * 3 + static_cast<std::uint64_t>(digit);
    }
    const Rational value = f.evaluate(T);
    if (!best[pattern].has_value() || value < *best[pattern])
      best[pattern] = value;
  }

  std::vector<LpRow> rows;
  for (std::uint64_t p = 0; p < num_patterns; ++p) {
    if (!best[p].has_value()) continue;
    LpRow row;
    row.coeffs.assign(static_cast<std::size_t>(n), Rational(0));
    std::uint64_t rest = p;
    for (int i = n - 1; i >= 0; --i) {
      const int digit = static_cast<int>(rest % 3);
      rest /= 3;
      if (digit == 1) row.coeffs[static_cast<std::size_t>(i)] = 1;
      if (digit == 2) row.coeffs[static_cast<std::size_t>(i)] = -1;
    }
    row.rel = Relation::kLessEq;
    row.rhs = *best[p];
    rows.push_back(std::move(row));
  }
  return rows;
}

Labeling singleton(const ValuedFunction& f, int i, Label l) {
  std::vector<Label> entries(static_cast<std::size_t>(f.n()));
  entries[static_cast<std::size_t>(i)] = l;
  return Labeling(f.k(), std::move(entries));
}

// Enumerates all-leaf labelings in lexicographic order.
class LeafVectorRange {
 public:
  LeafVectorRange(int k, int n) : k_(k), n_(n) {
    count_ = 1;
    for (int i = 0; i < n; ++i) count_ *= static_cast<std::uint64_t>(k);
  }

  std::uint64_t size() const { return count_; }

  Labeling at(std::uint64_t index) const {
    std::vector<Label> entries(static_cast<std::size_t>(n_));
    for (int i = n_ - 1; i >= 0; --i) {
      entries[static_cast<std::size_t>(i)] =
          Label::leaf(1 + static_cast<int>(index % static_cast<std::uint64_t>(k_)));
      index /= static_cast<std::uint64_t>(k_);
    }
    return Labeling(k_, std::move(entries));
  }

 private:
  int k_;
  int n_;
  std::uint64_t count_;
};

}  // namespace

FixedDualResult max_dual_fixed_L(const ValuedFunction& f, const Labeling& L,
                                 std::uint64_t budget) {
  require_all_leaf(f, L);
  LinearProgram lp;
  lp.num_vars = f.n();
  lp.objective.assign(static_cast<std::size_t>(f.n()), Rational(1));
  lp.rows = pattern_rows(f, L, budget);
  const LpSolution sol = lp_min(lp);
  FixedDualResult result;
  result.pivots = sol.pivots;
  if (sol.status == LpStatus::kUnbounded)
    throw KsubError("fixed-L dual LP unbounded; solver invariant broken");
  if (sol.status == LpStatus::kInfeasible) return result;
  result.feasible = true;
  result.objective = -sol.objective;
  result.x = sol.point;
  return result;
}

std::optional<DualOptimum> max_dual(const ValuedFunction& f, std::uint64_t budget) {
  const int n = f.n();
  const int k = f.k();
  labeling_count(k, n, budget);  // guards k^n below as well
  LeafVectorRange leaf_vectors(k, n);
  if (leaf_vectors.size() > budget)
    throw BudgetExceeded("k^n leaf choices exceed the budget");

  // Singleton values f(delta_i(l)) feed the quick infeasibility prefilter.
  std::vector<std::vector<Rational>> single(
      static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(k)));
  for (int i = 0; i < n; ++i)
    for (int l = 1; l <= k; ++l)
      single[static_cast<std::size_t>(i)][static_cast<std::size_t>(l - 1)] =
          f.evaluate(singleton(f, i, Label::leaf(l)));

  std::optional<DualOptimum> best;
  for (std::uint64_t idx = 0; idx < leaf_vectors.size(); ++idx) {
    const Labeling L = leaf_vectors.at(idx);
    if (k >= 2) {
      bool empty_box = false;
      for (int i = 0; i < n && !empty_box; ++i) {
        const Rational& hi =
            single[static_cast<std::size_t>(i)][static_cast<std::size_t>(L[i].leaf_index() - 1)];
        if (hi < 0) {
          empty_box = true;
          break;
        }
        for (int l = 1; l <= k; ++l) {
          if (l == L[i].leaf_index()) continue;
          if (-single[static_cast<std::size_t>(i)][static_cast<std::size_t>(l - 1)] > hi) {
            empty_box = true;
            break;
          }
        }
      }
      if (empty_box) continue;
    }
    const FixedDualResult fixed = max_dual_fixed_L(f, L, budget);
    if (!fixed.feasible) continue;
    if (!best.has_value() || fixed.objective > best->objective) {
      best = DualOptimum{fixed.objective,
                         SignedVector(k, fixed.x, L.entries())};
    }
  }
  return best;
}

std::optional<DualOptimum> max_dual_integer(const ValuedFunction& f,
                                            std::uint64_t budget) {
  const int n = f.n();
  const int k = f.k();
  labeling_count(k, n, budget);
  if (!f.integer_valued(budget))
    throw std::invalid_argument("max_dual_integer requires an integer-valued function");
  if (f.value_at_zero() != 0)
    throw std::invalid_argument("max_dual_integer requires a normalized function");

  std::vector<std::vector<Rational>> single(
      static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(k)));
  for (int i = 0; i < n; ++i)
    for (int l = 1; l <= k; ++l)
      single[static_cast<std::size_t>(i)][static_cast<std::size_t>(l - 1)] =
          f.evaluate(singleton(f, i, Label::leaf(l)));

  // For k = 1 the singletons only bound x_i from below; any optimum has
  // every coordinate at most -min f, which caps the box instead.
  Rational k1_cap = 0;
  if (k == 1) {
    const auto [min_value, argmin] = brute_force_min(f, budget);
    if (min_value < 0) k1_cap = -min_value;
  }

  LeafVectorRange leaf_vectors(k, n);
  if (leaf_vectors.size() > budget)
    throw BudgetExceeded("k^n leaf choices exceed the budget");

  std::optional<DualOptimum> best;
  std::optional<Rational> best_norm;
  std::uint64_t candidates_used = 0;
  for (std::uint64_t idx = 0; idx < leaf_vectors.size(); ++idx) {
    const Labeling L = leaf_vectors.at(idx);

    std::vector<long> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
    bool empty_box = false;
    for (int i = 0; i < n; ++i) {
      Rational lower = 0;
      Rational upper;
      if (k == 1) {
        lower = std::max(Rational(0), Rational(-single[static_cast<std::size_t>(i)][0]));
        upper = std::max(lower, k1_cap);
      } else {
        for (int l = 1; l <= k; ++l) {
          if (l == L[i].leaf_index()) continue;
          lower = std::max(
              lower,
              Rational(-single[static_cast<std::size_t>(i)][static_cast<std::size_t>(l - 1)]));
        }
        upper = single[static_cast<std::size_t>(i)][static_cast<std::size_t>(L[i].leaf_index() - 1)];
      }
      if (upper < lower) {
        empty_box = true;
        break;
      }
      lo[static_cast<std::size_t>(i)] = lower.get_num().get_si();
      hi[static_cast<std::size_t>(i)] = upper.get_num().get_si();
    }
    if (empty_box) continue;

    std::uint64_t volume = 1;
    for (int i = 0; i < n; ++i) {
      const std::uint64_t width =
          static_cast<std::uint64_t>(hi[static_cast<std::size_t>(i)] -
                                     lo[static_cast<std::size_t>(i)]) + 1;
      if (volume > budget / width) throw BudgetExceeded("integer search box too large");
      volume *= width;
    }
    candidates_used += volume;
    if (candidates_used > budget)
      throw BudgetExceeded("integer dual search exceeds the budget");

    const std::vector<LpRow> rows = pattern_rows(f, L, budget);
    std::vector<long> x(lo);
    while (true) {
      long sum = 0;
      for (long xi : x) sum += xi;
      const bool promising =
          !best_norm.has_value() || Rational(sum) < *best_norm;
      if (promising) {
        bool feasible = true;
        for (const LpRow& row : rows) {
          Rational lhs = 0;
          for (int i = 0; i < n; ++i)
            if (row.coeffs[static_cast<std::size_t>(i)] != 0)
              lhs += row.coeffs[static_cast<std::size_t>(i)] *
                     Rational(x[static_cast<std::size_t>(i)]);
          if (lhs > row.rhs) {
            feasible = false;
            break;
          }
        }
        if (feasible) {
          std::vector<Rational> xr;
          xr.reserve(static_cast<std::size_t>(n));
          for (long xi : x) xr.emplace_back(xi);
          best_norm = Rational(sum);
          best = DualOptimum{Rational(-sum), SignedVector(k, xr, L.entries())};
        }
      }
      int pos = n - 1;
      while (pos >= 0 && x[static_cast<std::size_t>(pos)] ==
                             hi[static_cast<std::size_t>(pos)]) {
        x[static_cast<std::size_t>(pos)] = lo[static_cast<std::size_t>(pos)];
        --pos;
      }
      if (pos < 0) break;
      ++x[static_cast<std::size_t>(pos)];
    }
  }

  if (best.has_value() && in_U(f, best->vector, budget).has_value())
    throw KsubError("integer dual winner fails the U(f) check; solver bug");
  return best;
}

MinMaxResult verify_minmax(const ValuedFunction& f, std::uint64_t budget) {
  if (f.value_at_zero() != 0)
    throw std::invalid_argument("verify_minmax requires a normalized function");

  if (const auto witness = check_k_submodular(f, budget)) {
    Discrepancy d;
    d.detail = "input is not k-submodular";
    d.witness = witness;
    return d;
  }

  const auto [min_value, argmin] = brute_force_min(f, budget);
  const std::optional<DualOptimum> dual = max_dual(f, budget);
  if (!dual.has_value()) {
    Discrepancy d;
    d.detail = "U(f) is empty although f passed the submodularity check";
    d.primal_value = min_value;
    return d;
  }
  if (dual->objective != min_value) {
    Discrepancy d;
    d.detail = "min-max equality fails";
    d.primal_value = min_value;
    d.dual_value = dual->objective;
    return d;
  }

  try {
    const Labeling extracted = extract_minimizer(f, dual->vector, budget);
    if (f.evaluate(extracted) != min_value) {
      Discrepancy d;
      d.detail = "extracted minimizer misses the optimum";
      d.primal_value = min_value;
      d.dual_value = dual->objective;
      return d;
    }
  } catch (const KsubError& e) {
    Discrepancy d;
    d.detail = std::string("minimizer extraction failed: ") + e.what();
    d.primal_value = min_value;
    d.dual_value = dual->objective;
    return d;
  }

  return Certificate{argmin, dual->vector, min_value};
}

std::string serialize_certificate(const ValuedFunction& f, const Certificate& cert,
                                  std::uint64_t budget) {
  std::ostringstream os;
  os << "value " << to_string(cert.value) << '\n';
  os << "primal " << cert.primal.to_string() << '\n';
  os << "dual-x";
  for (const Rational& xi : cert.dual.x()) os << ' ' << to_string(xi);
  os << '\n';
  os << "dual-L";
  for (Label l : cert.dual.leaves()) os << ' ' << l.token();
  os << '\n';
  os << "extracted " << extract_minimizer(f, cert.dual, budget).to_string() << '\n';
  const TightFamily family = tight_family(f, cert.dual, budget);
  os << "tight " << family.members.size() << '\n';
  for (const Labeling& T : family.members) os << T.to_string() << '\n';
  return os.str();
}

}  // namespace ksub
