#include "ksub/full_vector.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "ksub/exact_linalg.hpp"
#include "ksub/lp.hpp"
#include "ksub/minmax.hpp"

namespace ksub {

FullVector::FullVector(int k, std::vector<std::vector<Rational>> rows)
    : k_(k), rows_(std::move(rows)) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  for (const auto& row : rows_)
    if (row.size() != static_cast<std::size_t>(k))
      throw std::invalid_argument("every row must have k entries");
}

FullVector FullVector::zeros(int k, int n) {
  return FullVector(k, std::vector<std::vector<Rational>>(
                           static_cast<std::size_t>(n),
                           std::vector<Rational>(static_cast<std::size_t>(k), Rational(0))));
}

Rational eval_full(const FullVector& x, const Labeling& T) {
  if (T.k() != x.k() || T.n() != x.n())
    throw std::invalid_argument("labeling has mismatched (k, n)");
  Rational sum = 0;
  for (int i = 0; i < x.n(); ++i)
    if (T[i].is_leaf()) sum += x.at(i, T[i].leaf_index());
  return sum;
}

namespace {

std::optional<PolyViolation> scan_rows(const ValuedFunction& f, const FullVector& x,
                                       bool include_pairs, std::uint64_t budget) {
  if (f.k() != x.k() || f.n() != x.n())
    throw std::invalid_argument("function and vector have mismatched (k, n)");
  for (const Labeling& T : LabelingRange(f.k(), f.n(), budget)) {
    const Rational lhs = eval_full(x, T);
    const Rational rhs = f.evaluate(T);
    if (lhs > rhs) {
      return PolyViolation{PolyViolation::Kind::kLabelingRow, T, std::nullopt,
                           lhs, rhs};
    }
  }
  if (include_pairs) {
    for (int i = 0; i < x.n(); ++i) {
      for (int p = 1; p <= x.k(); ++p) {
        for (int q = p + 1; q <= x.k(); ++q) {
          const Rational lhs = x.at(i, p) + x.at(i, q);
          if (lhs > 0) {
            return PolyViolation{PolyViolation::Kind::kPairRow, std::nullopt,
                                 PairRow{i, p, q}, lhs, Rational(0)};
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<PolyViolation> in_P(const ValuedFunction& f, const FullVector& x,
                                  std::uint64_t budget) {
  return scan_rows(f, x, true, budget);
}

std::optional<PolyViolation> in_P_FT(const ValuedFunction& f, const FullVector& x,
                                     std::uint64_t budget) {
  return scan_rows(f, x, false, budget);
}

bool is_unified(const FullVector& x) {
  for (int i = 0; i < x.n(); ++i) {
    if (x.k() == 1) {
      if (x.at(i, 1) > 0) return false;
      continue;
    }
    bool row_ok = false;
    for (int l = 1; l <= x.k() && !row_ok; ++l) {
      if (x.at(i, l) < 0) continue;
      bool match = true;
      for (int p = 1; p <= x.k(); ++p) {
        if (p == l) continue;
        if (x.at(i, p) != -x.at(i, l)) {
          match = false;
          break;
        }
      }
      row_ok = match;
    }
    if (!row_ok) return false;
  }
  return true;
}

FullVector embed_signed(const SignedVector& v) {
  FullVector x = FullVector::zeros(v.k(), v.n());
  for (int i = 0; i < v.n(); ++i) {
    for (int l = 1; l <= v.k(); ++l) {
      x.at(i, l) = anti_aligned(v.k(), v.leaf(i), Label::leaf(l))
                       ? -v.magnitude(i)
                       : v.magnitude(i);
    }
  }
  return x;
}

SignedVector project_unified(const FullVector& x) {
  if (!is_unified(x)) throw KsubError("vector is not unified");
  std::vector<Rational> mags(static_cast<std::size_t>(x.n()));
  std::vector<Label> leaves(static_cast<std::size_t>(x.n()));
  for (int i = 0; i < x.n(); ++i) {
    if (x.k() == 1) {
      mags[static_cast<std::size_t>(i)] = -x.at(i, 1);
      leaves[static_cast<std::size_t>(i)] = Label::leaf(1);
      continue;
    }
    int chosen = 1;
    for (int l = 1; l <= x.k(); ++l) {
      if (x.at(i, l) > 0) {
        chosen = l;
        break;
      }
    }
    mags[static_cast<std::size_t>(i)] = x.at(i, chosen) >= 0 ? x.at(i, chosen) : 0;
    leaves[static_cast<std::size_t>(i)] = Label::leaf(chosen);
  }
  return SignedVector(x.k(), std::move(mags), std::move(leaves));
}

Rational norm_1inf(const FullVector& x) {
  Rational sum = 0;
  for (int i = 0; i < x.n(); ++i) {
    Rational best = 0;
    for (int l = 1; l <= x.k(); ++l) {
      const Rational a = abs(x.at(i, l));
      if (a > best) best = a;
    }
    sum += best;
  }
  return sum;
}

TightFull tight_full(const ValuedFunction& f, const FullVector& x,
                     std::uint64_t budget) {
  if (const auto bad = in_P(f, x, budget)) {
    throw KsubError(bad->kind == PolyViolation::Kind::kLabelingRow
                        ? "vector is not in P(f): labeling row violated at " +
                              bad->labeling->to_string()
                        : "vector is not in P(f): pair row violated");
  }
  TightFull tight;
  std::unordered_set<std::uint64_t> indices;
  for (const Labeling& T : LabelingRange(f.k(), f.n(), budget)) {
    if (eval_full(x, T) == f.evaluate(T)) {
      indices.insert(labeling_index(T));
      tight.labelings.push_back(T);
    }
  }
  for (int i = 0; i < x.n(); ++i)
    for (int p = 1; p <= x.k(); ++p)
      for (int q = p + 1; q <= x.k(); ++q)
        if (x.at(i, p) + x.at(i, q) == 0) tight.pairs.push_back(PairRow{i, p, q});

  for (const Labeling& T : tight.labelings) {
    for (const Labeling& U : tight.labelings) {
      const Labeling lo = meet_vec(T, U);
      const Labeling hi = join_vec(T, U);
      if (!indices.count(labeling_index(lo)) || !indices.count(labeling_index(hi)))
        throw KsubError("tight labelings not closed under meet/join at T = " +
                        T.to_string() + ", U = " + U.to_string());
      if (f.evaluate(lo) + f.evaluate(hi) != f.evaluate(T) + f.evaluate(U))
        throw KsubError("f is not k-modular on the tight labelings");
    }
  }
  return tight;
}

namespace {

// Coefficient row of a labeling equation over the kn unknowns x_{i,l}.
std::vector<Rational> labeling_row(int k, int n, const Labeling& T) {
  std::vector<Rational> row(static_cast<std::size_t>(k * n), Rational(0));
  for (int i = 0; i < n; ++i)
    if (T[i].is_leaf())
      row[static_cast<std::size_t>(i * k + T[i].leaf_index() - 1)] = 1;
  return row;
}

std::vector<Rational> pair_row_coeffs(int k, int n, const PairRow& pr) {
  std::vector<Rational> row(static_cast<std::size_t>(k * n), Rational(0));
  row[static_cast<std::size_t>(pr.i * k + pr.p - 1)] = 1;
  row[static_cast<std::size_t>(pr.i * k + pr.q - 1)] = 1;
  return row;
}

}  // namespace

bool is_basis(const ValuedFunction& f, const FullVector& x, const Basis& basis) {
  const int kn = f.k() * f.n();
  if (basis.b1.size() + basis.b2.size() != static_cast<std::size_t>(kn)) return false;

  // Set semantics: duplicated members leave fewer than kn distinct rows and
  // the rank test below would fail anyway, but reject them explicitly.
  std::vector<Labeling> b1 = basis.b1;
  std::sort(b1.begin(), b1.end(),
            [](const Labeling& a, const Labeling& b) { return a < b; });
  if (std::adjacent_find(b1.begin(), b1.end()) != b1.end()) return false;
  std::vector<PairRow> b2 = basis.b2;
  std::sort(b2.begin(), b2.end(), [](const PairRow& a, const PairRow& b) {
    return std::tie(a.i, a.p, a.q) < std::tie(b.i, b.p, b.q);
  });
  if (std::adjacent_find(b2.begin(), b2.end()) != b2.end()) return false;

  Matrix rows;
  rows.reserve(static_cast<std::size_t>(kn));
  for (const Labeling& T : basis.b1) {
    if (T.k() != f.k() || T.n() != f.n()) return false;
    if (eval_full(x, T) != f.evaluate(T)) return false;  // must lie in F(x)
    rows.push_back(labeling_row(f.k(), f.n(), T));
  }
  for (const PairRow& pr : basis.b2) {
    if (pr.i < 0 || pr.i >= f.n() || pr.p < 1 || pr.q <= pr.p || pr.q > f.k())
      return false;
    if (x.at(pr.i, pr.p) + x.at(pr.i, pr.q) != 0) return false;  // must lie in G(x)
    rows.push_back(pair_row_coeffs(f.k(), f.n(), pr));
  }
  // x satisfies every selected equation, so nonsingularity makes it the
  // unique solution.
  return matrix_rank(std::move(rows)) == kn;
}

Basis exchange_step(const ValuedFunction& f, const FullVector& x, const Basis& basis,
                    const Labeling& S, const Labeling& T) {
  const auto in_b1 = [&](const Labeling& L) {
    return std::find(basis.b1.begin(), basis.b1.end(), L) != basis.b1.end();
  };
  if (!in_b1(S) || !in_b1(T))
    throw std::invalid_argument("S and T must be members of b1");
  if (!is_basis(f, x, basis))
    throw std::invalid_argument("input is not a basis for x");

  Basis without = basis;
  without.b1.erase(std::find(without.b1.begin(), without.b1.end(), T));

  const auto try_labeling = [&](const Labeling& gamma) -> std::optional<Basis> {
    Basis candidate = without;
    candidate.b1.push_back(gamma);
    if (is_basis(f, x, candidate)) return candidate;
    return std::nullopt;
  };

  if (auto result = try_labeling(meet_vec(S, T))) return *result;
  if (auto result = try_labeling(join_vec(S, T))) return *result;
  for (int i = 0; i < f.n(); ++i) {
    if (!S[i].is_leaf() || !T[i].is_leaf() || S[i] == T[i]) continue;
    Basis candidate = without;
    const int p = std::min(S[i].leaf_index(), T[i].leaf_index());
    const int q = std::max(S[i].leaf_index(), T[i].leaf_index());
    candidate.b2.push_back(PairRow{i, p, q});
    if (is_basis(f, x, candidate)) return candidate;
  }
  throw KsubError("no exchange candidate restores a basis; implementation bug");
}

FullVector vertex_by_lp(const ValuedFunction& f, const FullVector& c,
                        std::uint64_t budget) {
  const int k = f.k();
  const int n = f.n();
  if (c.k() != k || c.n() != n)
    throw std::invalid_argument("objective has mismatched (k, n)");
  for (int i = 0; i < n; ++i)
    for (int l = 1; l <= k; ++l)
      if (c.at(i, l) <= 0)
        throw std::invalid_argument("objective must be strictly positive");

  const std::uint64_t count = labeling_count(k, n, budget);
  LinearProgram lp;
  lp.num_vars = k * n;
  lp.lower_bounds.assign(static_cast<std::size_t>(k * n), std::nullopt);
  lp.objective.resize(static_cast<std::size_t>(k * n));
  for (int i = 0; i < n; ++i)
    for (int l = 1; l <= k; ++l)
      lp.objective[static_cast<std::size_t>(i * k + l - 1)] = -c.at(i, l);

  std::vector<Labeling> all;
  all.reserve(count);
  for (const Labeling& T : LabelingRange(k, n, budget)) {
    all.push_back(T);
    lp.rows.push_back(LpRow{labeling_row(k, n, T), Relation::kLessEq, f.evaluate(T)});
  }
  std::vector<PairRow> all_pairs;
  for (int i = 0; i < n; ++i)
    for (int p = 1; p <= k; ++p)
      for (int q = p + 1; q <= k; ++q) {
        all_pairs.push_back(PairRow{i, p, q});
        lp.rows.push_back(LpRow{pair_row_coeffs(k, n, PairRow{i, p, q}),
                                Relation::kLessEq, Rational(0)});
      }

  const LpSolution sol = lp_min(lp);
  if (sol.status == LpStatus::kUnbounded)
    throw KsubError("P(f) is unbounded in a positive direction; malformed instance");
  if (sol.status == LpStatus::kInfeasible)
    throw KsubError("P(f) came out infeasible; solver invariant broken");

  std::vector<std::vector<Rational>> point_rows(
      static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(k)));
  for (int i = 0; i < n; ++i)
    for (int l = 1; l <= k; ++l)
      point_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(l - 1)] =
          sol.point[static_cast<std::size_t>(i * k + l - 1)];
  FullVector x(k, std::move(point_rows));

  // Purify to a vertex: while the tight rows leave a free direction, move
  // along it (the objective cannot change at an optimum) until a new row
  // becomes tight.
  while (true) {
    Matrix tight;
    std::vector<std::size_t> loose;
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < lp.rows[r].coeffs.size(); ++j)
        if (lp.rows[r].coeffs[j] != 0)
          lhs += lp.rows[r].coeffs[j] *
                 x.at(static_cast<int>(j) / k, static_cast<int>(j) % k + 1);
      if (lhs == lp.rows[r].rhs)
        tight.push_back(lp.rows[r].coeffs);
      else
        loose.push_back(r);
    }
    const auto direction = nullspace_vector(tight);
    if (!direction.has_value()) break;
    const std::vector<Rational>& d = *direction;

    Rational drift = 0;
    for (std::size_t j = 0; j < d.size(); ++j) drift += lp.objective[j] * d[j];
    if (drift != 0)
      throw KsubError("free direction changes the optimal objective; solver bug");

    bool moved = false;
    for (int sign = 0; sign < 2 && !moved; ++sign) {
      std::optional<Rational> step;
      for (std::size_t r : loose) {
        Rational along = 0;
        for (std::size_t j = 0; j < d.size(); ++j)
          if (lp.rows[r].coeffs[j] != 0)
            along += lp.rows[r].coeffs[j] * (sign == 0 ? d[j] : -d[j]);
        if (along <= 0) continue;
        Rational slack = lp.rows[r].rhs;
        for (std::size_t j = 0; j < d.size(); ++j)
          if (lp.rows[r].coeffs[j] != 0)
            slack -= lp.rows[r].coeffs[j] *
                     x.at(static_cast<int>(j) / k, static_cast<int>(j) % k + 1);
        const Rational ratio = slack / along;
        if (!step.has_value() || ratio < *step) step = ratio;
      }
      if (step.has_value()) {
        for (std::size_t j = 0; j < d.size(); ++j) {
          x.at(static_cast<int>(j) / k, static_cast<int>(j) % k + 1) +=
              (sign == 0 ? d[j] : -d[j]) * (*step);
        }
        moved = true;
      }
    }
    if (!moved)
      throw KsubError("free line through the optimum; P(f) should be pointed");
  }
  return x;
}

Basis extract_basis(const ValuedFunction& f, const FullVector& x,
                    std::uint64_t budget) {
  const TightFull tight = tight_full(f, x, budget);
  Matrix rows;
  rows.reserve(tight.labelings.size() + tight.pairs.size());
  for (const Labeling& T : tight.labelings)
    rows.push_back(labeling_row(f.k(), f.n(), T));
  for (const PairRow& pr : tight.pairs)
    rows.push_back(pair_row_coeffs(f.k(), f.n(), pr));

  const std::vector<std::size_t> chosen = independent_rows(rows);
  if (chosen.size() != static_cast<std::size_t>(f.k() * f.n()))
    throw KsubError("point is not a vertex: tight rows have rank " +
                    std::to_string(chosen.size()));
  Basis basis;
  for (std::size_t idx : chosen) {
    if (idx < tight.labelings.size())
      basis.b1.push_back(tight.labelings[idx]);
    else
      basis.b2.push_back(tight.pairs[idx - tight.labelings.size()]);
  }
  return basis;
}

FtReport verify_ft(const ValuedFunction& f, std::uint64_t budget) {
  const int k = f.k();
  const int n = f.n();

  // Variables: the kn free entries, then n epigraph variables z_i bounding
  // the row maxima in absolute value; minimize sum z.
  LinearProgram lp;
  lp.num_vars = k * n + n;
  lp.lower_bounds.assign(static_cast<std::size_t>(lp.num_vars), std::nullopt);
  for (int i = 0; i < n; ++i)
    lp.lower_bounds[static_cast<std::size_t>(k * n + i)] = Rational(0);
  lp.objective.assign(static_cast<std::size_t>(lp.num_vars), Rational(0));
  for (int i = 0; i < n; ++i)
    lp.objective[static_cast<std::size_t>(k * n + i)] = 1;

  for (const Labeling& T : LabelingRange(k, n, budget)) {
    LpRow row;
    row.coeffs = labeling_row(k, n, T);
    row.coeffs.resize(static_cast<std::size_t>(lp.num_vars), Rational(0));
    row.rel = Relation::kLessEq;
    row.rhs = f.evaluate(T);
    lp.rows.push_back(std::move(row));
  }
  for (int i = 0; i < n; ++i) {
    for (int l = 1; l <= k; ++l) {
      for (int sign = 0; sign < 2; ++sign) {
        LpRow row;
        row.coeffs.assign(static_cast<std::size_t>(lp.num_vars), Rational(0));
        row.coeffs[static_cast<std::size_t>(i * k + l - 1)] = sign == 0 ? 1 : -1;
        row.coeffs[static_cast<std::size_t>(k * n + i)] = -1;
        row.rel = Relation::kLessEq;
        row.rhs = 0;
        lp.rows.push_back(std::move(row));
      }
    }
  }

  const LpSolution sol = lp_min(lp);
  if (sol.status != LpStatus::kOptimal)
    throw KsubError("epigraph LP failed to solve; the labeling rows always "
                    "admit a feasible point");

  std::vector<std::vector<Rational>> rows(
      static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(k)));
  for (int i = 0; i < n; ++i)
    for (int l = 1; l <= k; ++l)
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(l - 1)] =
          sol.point[static_cast<std::size_t>(i * k + l - 1)];

  FtReport report{Rational(-sol.objective), Rational(0), Rational(0), false,
                  false, FullVector(k, std::move(rows)), sol.pivots};

  report.primal_value = brute_force_min(f, budget).first;
  const std::optional<DualOptimum> dual = max_dual(f, budget);
  if (dual.has_value()) {
    report.dual_value = dual->objective;
    const FullVector embedded = embed_signed(dual->vector);
    report.chain_ok = !in_P(f, embedded, budget).has_value() &&
                      !in_P_FT(f, embedded, budget).has_value();
    report.equal = report.ft_value == report.primal_value &&
                   report.ft_value == report.dual_value;
  }
  return report;
}

}  // namespace ksub
