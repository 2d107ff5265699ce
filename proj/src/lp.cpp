#include "ksub/lp.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ksub {

namespace {

// Dense simplex tableau over the standard form min c.u, A u = b, u >= 0.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs,
          std::vector<int> basis, std::size_t num_cols, long pivot_limit)
      : rows_(std::move(rows)),
        rhs_(std::move(rhs)),
        basis_(std::move(basis)),
        num_cols_(num_cols),
        pivot_limit_(pivot_limit) {}

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return num_cols_; }
  long pivots() const { return pivots_; }

  // Minimizes cost over the current feasible region starting from the current
  // basis. Returns false when unbounded.
  bool minimize(const std::vector<Rational>& cost) {
    reduced_ = cost;
    reduced_rhs_ = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational factor = reduced_[static_cast<std::size_t>(basis_[r])];
      if (factor == 0) continue;
      subtract_from_cost(r, factor);
    }
    while (true) {
      // Bland: entering column is the smallest index with negative cost.
      std::size_t entering = num_cols();
      for (std::size_t j = 0; j < num_cols(); ++j) {
        if (reduced_[j] < 0) {
          entering = j;
          break;
        }
      }
      if (entering == num_cols()) return true;
      std::size_t leaving = num_rows();
      Rational best_ratio = 0;
      for (std::size_t r = 0; r < num_rows(); ++r) {
        if (rows_[r][entering] <= 0) continue;
        const Rational ratio = rhs_[r] / rows_[r][entering];
        if (leaving == num_rows() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (leaving == num_rows()) return false;
      pivot(leaving, entering);
    }
  }

  Rational objective_value() const { return -reduced_rhs_; }

  // Pivots basic artificial variables out (or deletes redundant rows); cols
  // >= first_artificial are artificials.
  void purge_artificials(std::size_t first_artificial) {
    for (std::size_t r = 0; r < num_rows();) {
      if (static_cast<std::size_t>(basis_[r]) < first_artificial) {
        ++r;
        continue;
      }
      std::size_t entering = first_artificial;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (rows_[r][j] != 0) {
          entering = j;
          break;
        }
      }
      if (entering < first_artificial) {
        pivot(r, entering);
        ++r;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
    for (auto& row : rows_) row.resize(first_artificial);
    num_cols_ = first_artificial;
  }

  std::vector<Rational> basic_point(std::size_t num_standard) const {
    std::vector<Rational> u(num_standard, Rational(0));
    for (std::size_t r = 0; r < num_rows(); ++r) {
      if (static_cast<std::size_t>(basis_[r]) < num_standard)
        u[static_cast<std::size_t>(basis_[r])] = rhs_[r];
    }
    return u;
  }

 private:
  void subtract_from_cost(std::size_t r, const Rational& factor) {
    for (std::size_t j = 0; j < num_cols(); ++j)
      if (rows_[r][j] != 0) reduced_[j] -= factor * rows_[r][j];
    reduced_rhs_ -= factor * rhs_[r];
  }

  void pivot(std::size_t r, std::size_t e) {
    if (++pivots_ > pivot_limit_)
      throw KsubError("simplex pivot limit exceeded (" +
                      std::to_string(pivot_limit_) + ")");
    const Rational inv = Rational(1) / rows_[r][e];
    for (auto& v : rows_[r]) v *= inv;
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < num_rows(); ++i) {
      if (i == r || rows_[i][e] == 0) continue;
      const Rational factor = rows_[i][e];
      for (std::size_t j = 0; j < num_cols(); ++j)
        if (rows_[r][j] != 0) rows_[i][j] -= factor * rows_[r][j];
      rhs_[i] -= factor * rhs_[r];
    }
    if (!reduced_.empty() && reduced_[e] != 0) {
      const Rational factor = reduced_[e];
      for (std::size_t j = 0; j < num_cols(); ++j)
        if (rows_[r][j] != 0) reduced_[j] -= factor * rows_[r][j];
      reduced_rhs_ -= factor * rhs_[r];
    }
    basis_[r] = static_cast<int>(e);
  }

  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::size_t num_cols_;
  std::vector<Rational> reduced_;
  Rational reduced_rhs_ = 0;
  long pivots_ = 0;
  long pivot_limit_;
};

}  // namespace

LpSolution lp_min(const LinearProgram& lp, long pivot_limit) {
  const std::size_t n = static_cast<std::size_t>(lp.num_vars);
  if (lp.objective.size() != n)
    throw std::invalid_argument("objective size mismatch");
  for (const LpRow& row : lp.rows)
    if (row.coeffs.size() != n)
      throw std::invalid_argument("constraint row size mismatch");
  if (!lp.lower_bounds.empty() && lp.lower_bounds.size() != n)
    throw std::invalid_argument("lower_bounds size mismatch");

  // Standard-form columns: one per bounded variable (x = lb + u), two per
  // free variable (x = u+ - u-), then slacks, then artificials.
  struct ColumnMap {
    std::size_t plus;
    std::size_t minus;  // == npos for bounded variables
    Rational shift;
  };
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<ColumnMap> var_cols(n);
  std::size_t next_col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::optional<Rational> lb =
        lp.lower_bounds.empty() ? std::optional<Rational>(Rational(0))
                                : lp.lower_bounds[j];
    if (lb.has_value()) {
      var_cols[j] = {next_col++, npos, *lb};
    } else {
      var_cols[j] = {next_col, next_col + 1, Rational(0)};
      next_col += 2;
    }
  }
  const std::size_t num_slacks = static_cast<std::size_t>(
      std::count_if(lp.rows.begin(), lp.rows.end(), [](const LpRow& r) {
        return r.rel == Relation::kLessEq;
      }));
  const std::size_t first_slack = next_col;
  const std::size_t num_standard = first_slack + num_slacks;

  const std::size_t m = lp.rows.size();
  std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(num_standard, Rational(0)));
  std::vector<Rational> rhs(m, Rational(0));
  std::vector<std::size_t> own_slack(m, npos);
  std::size_t slack_at = first_slack;
  for (std::size_t i = 0; i < m; ++i) {
    Rational b = lp.rows[i].rhs;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& a = lp.rows[i].coeffs[j];
      if (a == 0) continue;
      rows[i][var_cols[j].plus] += a;
      if (var_cols[j].minus != npos) rows[i][var_cols[j].minus] -= a;
      b -= a * var_cols[j].shift;
    }
    if (lp.rows[i].rel == Relation::kLessEq) {
      own_slack[i] = slack_at;
      rows[i][slack_at++] = 1;
    }
    rhs[i] = b;
  }

  // Flip rows to nonnegative right-hand sides; a row whose own slack keeps
  // coefficient +1 starts with that slack basic, the rest get artificials.
  std::vector<int> basis(m, -1);
  std::size_t num_artificials = 0;
  for (std::size_t i = 0; i < m; ++i) {
    bool flipped = false;
    if (rhs[i] < 0) {
      for (auto& v : rows[i]) v = -v;
      rhs[i] = -rhs[i];
      flipped = true;
    }
    if (own_slack[i] != npos && !flipped) {
      basis[i] = static_cast<int>(own_slack[i]);
    } else {
      ++num_artificials;
    }
  }
  const std::size_t total_cols = num_standard + num_artificials;
  std::size_t artificial_at = num_standard;
  for (std::size_t i = 0; i < m; ++i) {
    rows[i].resize(total_cols, Rational(0));
    if (basis[i] < 0) {
      rows[i][artificial_at] = 1;
      basis[i] = static_cast<int>(artificial_at++);
    }
  }

  Tableau tab(std::move(rows), std::move(rhs), std::move(basis), total_cols,
              pivot_limit);

  LpSolution result;
  if (num_artificials > 0) {
    std::vector<Rational> phase1(total_cols, Rational(0));
    for (std::size_t j = num_standard; j < total_cols; ++j) phase1[j] = 1;
    if (!tab.minimize(phase1))
      throw KsubError("phase-1 objective unbounded; solver invariant broken");
    if (tab.objective_value() != 0) {
      result.status = LpStatus::kInfeasible;
      result.pivots = tab.pivots();
      return result;
    }
    tab.purge_artificials(num_standard);
  }

  std::vector<Rational> phase2(num_standard, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (lp.objective[j] == 0) continue;
    phase2[var_cols[j].plus] += lp.objective[j];
    if (var_cols[j].minus != npos) phase2[var_cols[j].minus] -= lp.objective[j];
  }
  const bool bounded = tab.minimize(phase2);
  result.pivots = tab.pivots();
  if (!bounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  const std::vector<Rational> u = tab.basic_point(num_standard);
  result.point.resize(n);
  result.objective = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Rational x = var_cols[j].shift + u[var_cols[j].plus];
    if (var_cols[j].minus != npos) x -= u[var_cols[j].minus];
    result.point[j] = x;
    result.objective += lp.objective[j] * x;
  }
  result.status = LpStatus::kOptimal;
  return result;
}

}  // namespace ksub
