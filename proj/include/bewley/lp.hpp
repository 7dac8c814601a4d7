#pragma once

#include "bewley/rational.hpp"

#include <cstddef>
#include <vector>

namespace bewley {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Vector point;    // optimal point when status == optimal
  Rational value;  // optimal objective value
};

enum class Relation { le, ge, eq };

/// Exact two-phase primal simplex over the rationals.
///
/// Variables are free unless marked nonnegative. The objective is maximized.
/// Pivoting follows Bland's smallest-index rule, so the returned optimal
/// vertex is a deterministic function of the model as built.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_vars);

  std::size_t num_vars() const { return num_vars_; }

  void require_nonnegative(std::size_t var);
  void require_all_nonnegative();

  void add_constraint(Vector coeffs, Relation rel, Rational rhs);
  void add_bounds(std::size_t var, const Rational& lower, const Rational& upper);

  /// Objective to maximize; defaults to zero (pure feasibility).
  void maximize(Vector objective);

  LpSolution solve() const;

 private:
  struct Row {
    Vector coeffs;
    Relation rel;
    Rational rhs;
  };
  std::size_t num_vars_;
  std::vector<bool> nonneg_;
  std::vector<Row> rows_;
  Vector objective_;
};

}  // namespace bewley
