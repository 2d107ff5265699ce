#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>

#include "ksub/exact_linalg.hpp"
#include "ksub/lp.hpp"
#include "ksub/rng.hpp"

using namespace ksub;

namespace {

LpRow row(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
  return LpRow{std::move(coeffs), rel, std::move(rhs)};
}

// Brute-force oracle: enumerate all vertex candidates as solutions of square
// subsystems drawn from the rows plus the active lower bounds, keep feasible
// ones, and take the best objective. Assumes a bounded feasible optimum.
std::optional<std::pair<Rational, std::vector<Rational>>> brute_lp(
    const LinearProgram& lp) {
  const std::size_t n = static_cast<std::size_t>(lp.num_vars);
  Matrix candidates;  // every row usable as an equality
  std::vector<Rational> rhs;
  for (const LpRow& r : lp.rows) {
    candidates.push_back(r.coeffs);
    rhs.push_back(r.rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const std::optional<Rational> lb =
        lp.lower_bounds.empty() ? std::optional<Rational>(Rational(0))
                                : lp.lower_bounds[j];
    if (!lb.has_value()) continue;
    std::vector<Rational> unit(n, Rational(0));
    unit[j] = 1;
    candidates.push_back(std::move(unit));
    rhs.push_back(*lb);
  }

  std::optional<std::pair<Rational, std::vector<Rational>>> best;
  std::vector<std::size_t> pick(n, 0);
  const std::size_t m = candidates.size();
  if (m < n) return best;
  // All n-subsets of candidate equalities.
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    Matrix a;
    std::vector<Rational> b;
    for (std::size_t i : idx) {
      a.push_back(candidates[i]);
      b.push_back(rhs[i]);
    }
    if (const auto x = solve_unique(std::move(a), std::move(b))) {
      bool feasible = true;
      for (std::size_t r = 0; r < lp.rows.size() && feasible; ++r) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < n; ++j) lhs += lp.rows[r].coeffs[j] * (*x)[j];
        if (lp.rows[r].rel == Relation::kEq ? lhs != lp.rows[r].rhs
                                            : lhs > lp.rows[r].rhs)
          feasible = false;
      }
      for (std::size_t j = 0; j < n && feasible; ++j) {
        const std::optional<Rational> lb =
            lp.lower_bounds.empty() ? std::optional<Rational>(Rational(0))
                                    : lp.lower_bounds[j];
        if (lb.has_value() && (*x)[j] < *lb) feasible = false;
      }
      if (feasible) {
        Rational value = 0;
        for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * (*x)[j];
        if (!best.has_value() || value < best->first) best = {value, *x};
      }
    }
    // next combination
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (idx[pos] != m - n + pos) break;
      if (pos == 0) return best;
    }
    if (idx[pos] == m - n + pos) return best;
    ++idx[pos];
    for (std::size_t q = pos + 1; q < n; ++q) idx[q] = idx[q - 1] + 1;
    (void)pick;
  }
}

}  // namespace

TEST_CASE("one-variable interval") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {Rational(1)};
  lp.rows = {row({Rational(-1)}, Relation::kLessEq, Rational(-1)),
             row({Rational(1)}, Relation::kLessEq, Rational(1))};
  const LpSolution sol = lp_min(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective == 1);
  CHECK(sol.point == std::vector<Rational>{Rational(1)});
}

TEST_CASE("zero objective returns the origin") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {Rational(0)};
  const LpSolution sol = lp_min(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective == 0);
  CHECK(sol.point == std::vector<Rational>{Rational(0)});
}

TEST_CASE("unbounded detection") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {Rational(-1)};
  const LpSolution sol = lp_min(lp);
  CHECK(sol.status == LpStatus::kUnbounded);
}

TEST_CASE("infeasible detection") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {Rational(1)};
  lp.rows = {row({Rational(1)}, Relation::kLessEq, Rational(-1))};
  const LpSolution sol = lp_min(lp);
  CHECK(sol.status == LpStatus::kInfeasible);
}

TEST_CASE("equality rows and free variables") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {Rational(1), Rational(0)};
  lp.lower_bounds = {std::nullopt, std::optional<Rational>(Rational(0))};
  lp.rows = {row({Rational(1), Rational(1)}, Relation::kEq, Rational(-5)),
             row({Rational(0), Rational(1)}, Relation::kLessEq, Rational(3))};
  const LpSolution sol = lp_min(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  // x0 = -5 - x1 is minimized by pushing x1 to its bound 3.
  CHECK(sol.objective == -8);
  CHECK(sol.point[0] == -8);
  CHECK(sol.point[1] == 3);
}

TEST_CASE("shifted lower bounds") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {Rational(1), Rational(1)};
  lp.lower_bounds = {std::optional<Rational>(Rational(2)),
                     std::optional<Rational>(Rational(-1))};
  lp.rows = {row({Rational(1), Rational(1)}, Relation::kLessEq, Rational(10))};
  const LpSolution sol = lp_min(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective == 1);
  CHECK(sol.point[0] == 2);
  CHECK(sol.point[1] == -1);
}

TEST_CASE("degenerate program terminates") {
  // Many redundant rows through the same vertex.
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {Rational(-1), Rational(-1)};
  lp.rows = {row({Rational(1), Rational(1)}, Relation::kLessEq, Rational(1)),
             row({Rational(2), Rational(2)}, Relation::kLessEq, Rational(2)),
             row({Rational(1), Rational(1)}, Relation::kLessEq, Rational(1)),
             row({Rational(3), Rational(3)}, Relation::kLessEq, Rational(3)),
             row({Rational(1), Rational(0)}, Relation::kLessEq, Rational(1))};
  const LpSolution sol = lp_min(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective == -1);
  CHECK(sol.pivots < 50);
}

TEST_CASE("random programs match the vertex-enumeration oracle") {
  Rng rng(2024);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    LinearProgram lp;
    lp.num_vars = static_cast<int>(rng.next(1, 3));
    const std::size_t n = static_cast<std::size_t>(lp.num_vars);
    for (std::size_t j = 0; j < n; ++j)
      lp.objective.emplace_back(rng.next(-3, 3));
    // Box part keeps everything bounded; a few random extra rows.
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> unit(n, Rational(0));
      unit[j] = 1;
      lp.rows.push_back(row(std::move(unit), Relation::kLessEq,
                            Rational(rng.next(0, 4))));
    }
    const long extra = rng.next(0, 3);
    for (long e = 0; e < extra; ++e) {
      std::vector<Rational> coeffs;
      for (std::size_t j = 0; j < n; ++j) coeffs.emplace_back(rng.next(-2, 2));
      lp.rows.push_back(row(std::move(coeffs), Relation::kLessEq,
                            Rational(rng.next(-1, 5))));
    }
    const LpSolution sol = lp_min(lp);
    const auto oracle = brute_lp(lp);
    if (sol.status == LpStatus::kInfeasible) {
      CHECK_FALSE(oracle.has_value());
      continue;
    }
    REQUIRE(sol.status == LpStatus::kOptimal);  // boxed, so never unbounded
    REQUIRE(oracle.has_value());
    CHECK(sol.objective == oracle->first);
    ++solved;
    CHECK(sol.pivots < kDefaultPivotLimit);
  }
  CHECK(solved > 20);
}
