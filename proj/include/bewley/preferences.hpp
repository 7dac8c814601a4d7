#pragma once

#include "bewley/geometry.hpp"
#include "bewley/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bewley {

/// Nonconstant affine functional u(x) = coeffs . x + constant on outcomes.
struct AffineUtility {
  Vector coeffs;
  Rational constant;

  Rational operator()(const Vector& x) const { return dot(coeffs, x) + constant; }
  friend bool operator==(const AffineUtility&, const AffineUtility&) = default;
};

/// An act assigns one outcome vector to each state.
class Act {
 public:
  explicit Act(std::vector<Vector> rows);

  /// The constant act paying `x` in each of `states` states.
  static Act constant(const Vector& x, std::size_t states);

  /// Statewise alpha f + (1 - alpha) g.
  static Act mixture(const Rational& alpha, const Act& f, const Act& g);

  std::size_t states() const { return rows_.size(); }
  std::size_t outcome_dim() const { return rows_.front().size(); }
  const Vector& operator[](std::size_t s) const { return rows_[s]; }
  const std::vector<Vector>& rows() const { return rows_; }
  bool is_constant() const;

  friend bool operator==(const Act&, const Act&) = default;

 private:
  std::vector<Vector> rows_;
};

struct Agent {
  std::string name;
  AffineUtility utility;
  Polytope beliefs;
};

/// n individuals over m states and d-dimensional outcomes, plus the society
/// when one is specified.
struct Profile {
  std::size_t states = 0;
  std::size_t outcome_dim = 0;
  std::vector<Agent> agents;
  std::optional<Agent> society;

  std::size_t size() const { return agents.size(); }
  /// Throws PreconditionError when no society is attached.
  const Agent& require_society() const;
};

/// Nonnegative weights over individuals.
struct WeightVector {
  Vector weights;

  std::size_t size() const { return weights.size(); }
  const Rational& operator[](std::size_t i) const { return weights[i]; }
  /// gamma in Delta(N): nonnegative and summing to one.
  bool is_distribution() const;
  /// alpha in R^n_+ \ {0}.
  bool is_nonneg_nonzero() const;
  std::vector<std::size_t> support() const;
};

/// Outcome pair ranked strictly, high over low.
struct OutcomePair {
  Vector high;
  Vector low;
};

/// sum_s p(s) u(f(s)).
Rational expected_utility(const AffineUtility& u, const Vector& p, const Act& f);

/// Bewley dominance f >=_a g: f's expected utility is at least g's under
/// every prior of a (checked on the belief vertices).
bool bewley_geq(const Agent& a, const Act& f, const Act& g);

bool bewley_incomparable(const Agent& a, const Act& f, const Act& g);

/// True iff every agent ranks all outcomes in conv(f(S) u g(S)) identically.
bool no_taste_disagreement(const Profile& prof, const Act& f, const Act& g);

/// Outcome pair every individual ranks strictly the same way, if any.
std::optional<OutcomePair> check_c_minimal_agreement(const Profile& prof);

/// Per-agent pairs (x^i*, x_i*) with u_i strictly increasing and every other
/// u_j indifferent, found directionally from the definition; empty when some
/// agent has no such pair.
std::optional<std::vector<OutcomePair>> check_c_diversity(const Profile& prof);

/// Rank of the n x d matrix of utility coefficient vectors.
std::size_t coefficient_rank(const Profile& prof);

/// Human-readable structural violations; empty means well formed.
std::vector<std::string> validate_profile(const Profile& prof);

}  // namespace bewley
