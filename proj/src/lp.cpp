#include "bewley/lp.hpp"

#include "bewley/errors.hpp"
#include "bewley/linalg.hpp"

#include <limits>
#include <optional>

namespace bewley {

LinearProgram::LinearProgram(std::size_t num_vars)
    : num_vars_(num_vars), nonneg_(num_vars, false), objective_(zeros(num_vars)) {}

void LinearProgram::require_nonnegative(std::size_t var) { nonneg_.at(var) = true; }

void LinearProgram::require_all_nonnegative() { nonneg_.assign(num_vars_, true); }

void LinearProgram::add_constraint(Vector coeffs, Relation rel, Rational rhs) {
  if (coeffs.size() != num_vars_) {
    throw DimensionMismatch("constraint has " + std::to_string(coeffs.size()) +
                            " coefficients, model has " + std::to_string(num_vars_) + " variables");
  }
  rows_.push_back({std::move(coeffs), rel, std::move(rhs)});
}

void LinearProgram::add_bounds(std::size_t var, const Rational& lower, const Rational& upper) {
  Vector e = unit(num_vars_, var);
  add_constraint(e, Relation::ge, lower);
  add_constraint(std::move(e), Relation::le, upper);
}

void LinearProgram::maximize(Vector objective) {
  if (objective.size() != num_vars_) throw DimensionMismatch("objective size differs from model");
  objective_ = std::move(objective);
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dense tableau for  A x = b, x >= 0, b >= 0.  `cost` holds reduced costs
// d_j = c_B B^-1 A_j - c_j of the current maximization objective, so a column
// with d_j < 0 improves it; `value` is the current objective value.
struct Tableau {
  std::vector<Vector> a;  // rows x cols
  Vector b;
  std::vector<std::size_t> basis;
  Vector cost;
  Rational value;
  std::size_t cols = 0;

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) {
      if (!x.is_zero()) x *= inv;
    }
    b[r] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) {
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
      }
      b[i] -= f * b[r];
    }
    if (!cost[c].is_zero()) {
      const Rational f = cost[c];
      for (std::size_t j = 0; j < cols; ++j) {
        if (!a[r][j].is_zero()) cost[j] -= f * a[r][j];
      }
      value -= f * b[r];
    }
    basis[r] = c;
  }

  void price(const Vector& c) {
    cost.assign(cols, Rational(0));
    for (std::size_t j = 0; j < cols; ++j) cost[j] = -c[j];
    value = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Rational& cb = c[basis[i]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!a[i][j].is_zero()) cost[j] += cb * a[i][j];
      }
      value += cb * b[i];
    }
  }

  // Runs Bland's rule over columns [0, allowed). Returns false on unboundedness.
  bool optimize(std::size_t allowed) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (cost[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i][enter] <= 0) continue;
        Rational ratio = b[i] / a[i][enter];
        if (leave == kNone || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution LinearProgram::solve() const {
  // Column layout: structural (x+ and, for free variables, x-), slacks, artificials.
  std::vector<std::size_t> pos_col(num_vars_), neg_col(num_vars_, kNone);
  std::size_t cols = 0;
  for (std::size_t v = 0; v < num_vars_; ++v) {
    pos_col[v] = cols++;
    if (!nonneg_[v]) neg_col[v] = cols++;
  }
  std::vector<std::size_t> slack_col(rows_.size(), kNone);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].rel != Relation::eq) slack_col[r] = cols++;
  }
  const std::size_t real_cols = cols;
  const std::size_t m = rows_.size();
  cols += m;

  Tableau t;
  t.cols = cols;
  t.a.assign(m, zeros(cols));
  t.b.assign(m, Rational(0));
  t.basis.assign(m, kNone);
  for (std::size_t r = 0; r < m; ++r) {
    const Row& row = rows_[r];
    for (std::size_t v = 0; v < num_vars_; ++v) {
      t.a[r][pos_col[v]] = row.coeffs[v];
      if (neg_col[v] != kNone) t.a[r][neg_col[v]] = -row.coeffs[v];
    }
    if (row.rel == Relation::le) t.a[r][slack_col[r]] = 1;
    if (row.rel == Relation::ge) t.a[r][slack_col[r]] = -1;
    t.b[r] = row.rhs;
    if (t.b[r] < 0) {
      for (auto& x : t.a[r]) x = -x;
      t.b[r] = -t.b[r];
    }
    t.a[r][real_cols + r] = 1;
    t.basis[r] = real_cols + r;
  }

  // Phase 1: maximize -(sum of artificials).
  Vector phase1 = zeros(cols);
  for (std::size_t r = 0; r < m; ++r) phase1[real_cols + r] = -1;
  t.price(phase1);
  t.optimize(cols);
  if (t.value < 0) return {LpStatus::infeasible, {}, {}};

  // Drive remaining (zero-valued) artificials out of the basis; rows where
  // that is impossible are linearly dependent and dropped.
  for (std::size_t r = 0; r < t.a.size();) {
    if (t.basis[r] < real_cols) {
      ++r;
      continue;
    }
    std::size_t c = kNone;
    for (std::size_t j = 0; j < real_cols; ++j) {
      if (!t.a[r][j].is_zero()) {
        c = j;
        break;
      }
    }
    if (c != kNone) {
      t.pivot(r, c);
      ++r;
    } else {
      t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(r));
      t.b.erase(t.b.begin() + static_cast<std::ptrdiff_t>(r));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
    }
  }

  // Phase 2.
  Vector phase2 = zeros(cols);
  for (std::size_t v = 0; v < num_vars_; ++v) {
    phase2[pos_col[v]] = objective_[v];
    if (neg_col[v] != kNone) phase2[neg_col[v]] = -objective_[v];
  }
  t.price(phase2);
  if (!t.optimize(real_cols)) return {LpStatus::unbounded, {}, {}};

  Vector column_values = zeros(cols);
  for (std::size_t i = 0; i < t.a.size(); ++i) column_values[t.basis[i]] = t.b[i];
  LpSolution out;
  out.status = LpStatus::optimal;
  out.point = zeros(num_vars_);
  for (std::size_t v = 0; v < num_vars_; ++v) {
    out.point[v] = column_values[pos_col[v]];
    if (neg_col[v] != kNone) out.point[v] -= column_values[neg_col[v]];
  }
  out.value = t.value;
  return out;
}

}  // namespace bewley
