#ifndef KSUB_LP_HPP
#define KSUB_LP_HPP

#include <optional>
#include <vector>

#include "ksub/rational.hpp"

namespace ksub {

enum class Relation { kLessEq, kEq };

struct LpRow {
  std::vector<Rational> coeffs;
  Relation rel = Relation::kLessEq;
  Rational rhs = 0;
};

// min c.x subject to the rows and per-variable lower bounds. An empty
// lower_bounds vector means every variable is >= 0; nullopt entries mark
// free variables.
struct LinearProgram {
  int num_vars = 0;
  std::vector<Rational> objective;
  std::vector<LpRow> rows;
  std::vector<std::optional<Rational>> lower_bounds;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Rational objective = 0;
  std::vector<Rational> point;
  long pivots = 0;
};

inline constexpr long kDefaultPivotLimit = 1000000;

// Exact two-phase simplex with Bland's anti-cycling rule; the returned basic
// point is deterministic for a given program.
LpSolution lp_min(const LinearProgram& lp, long pivot_limit = kDefaultPivotLimit);

}  // namespace ksub

#endif  // KSUB_LP_HPP
