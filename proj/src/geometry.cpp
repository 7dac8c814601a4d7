#include "bewley/geometry.hpp"

#include "bewley/errors.hpp"

#include <algorithm>

namespace bewley {

bool is_simplex_point(const Vector& p) {
  if (p.empty()) return false;
  for (const auto& x : p) {
    if (x < 0) return false;
  }
  return sum(p) == 1;
}

Vector dirac(std::size_t m, std::size_t s) { return unit(m, s); }

Polytope::Polytope(std::vector<Vector> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw PreconditionError("polytope needs at least one generator");
  dim_ = generators_.front().size();
  if (dim_ == 0) throw PreconditionError("polytope generators must have positive dimension");
  for (const auto& g : generators_) {
    if (g.size() != dim_) throw DimensionMismatch("polytope generators have differing dimensions");
  }
  vertices_ = remove_redundant(generators_);
}

bool Polytope::same_vertices(const Polytope& other) const {
  if (dim_ != other.dim_ || vertices_.size() != other.vertices_.size()) return false;
  auto a = vertices_;
  auto b = other.vertices_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::optional<Vector> hull_weights(const Vector& p, std::span<const Vector> points) {
  if (points.empty()) return std::nullopt;
  for (const auto& v : points) require_same_dim(p, v, "hull membership");
  if (points.size() == 1) {
    if (points.front() == p) return Vector{Rational(1)};
    return std::nullopt;
  }
  const std::size_t k = points.size();
  LinearProgram lp(k);
  lp.require_all_nonnegative();
  lp.add_constraint(Vector(k, Rational(1)), Relation::eq, 1);
  for (std::size_t c = 0; c < p.size(); ++c) {
    Vector row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = points[j][c];
    lp.add_constraint(std::move(row), Relation::eq, p[c]);
  }
  LpSolution sol = lp.solve();
  if (sol.status != LpStatus::optimal) return std::nullopt;
  return sol.point;
}

bool membership(const Vector& p, const Polytope& P) {
  require_same_dim(p, P.vertices().front(), "membership");
  return hull_weights(p, P.vertices()).has_value();
}

std::optional<HullIntersection> hull_intersection(std::span<const Vector> a,
                                                  std::span<const Vector> b) {
  if (a.empty() || b.empty()) return std::nullopt;
  const std::size_t dim = a.front().size();
  for (const auto& v : a) require_same_dim(v, a.front(), "hull intersection");
  for (const auto& v : b) require_same_dim(v, a.front(), "hull intersection");
  const std::size_t ka = a.size();
  const std::size_t kb = b.size();
  LinearProgram lp(ka + kb);
  lp.require_all_nonnegative();
  Vector sum_a = zeros(ka + kb), sum_b = zeros(ka + kb);
  for (std::size_t j = 0; j < ka; ++j) sum_a[j] = 1;
  for (std::size_t j = 0; j < kb; ++j) sum_b[ka + j] = 1;
  lp.add_constraint(std::move(sum_a), Relation::eq, 1);
  lp.add_constraint(std::move(sum_b), Relation::eq, 1);
  for (std::size_t c = 0; c < dim; ++c) {
    Vector row(ka + kb);
    for (std::size_t j = 0; j < ka; ++j) row[j] = a[j][c];
    for (std::size_t j = 0; j < kb; ++j) row[ka + j] = -b[j][c];
    lp.add_constraint(std::move(row), Relation::eq, 0);
  }
  LpSolution sol = lp.solve();
  if (sol.status != LpStatus::optimal) return std::nullopt;
  HullIntersection out;
  out.weights_a.assign(sol.point.begin(), sol.point.begin() + static_cast<std::ptrdiff_t>(ka));
  out.weights_b.assign(sol.point.begin() + static_cast<std::ptrdiff_t>(ka), sol.point.end());
  out.point = zeros(dim);
  for (std::size_t j = 0; j < ka; ++j) axpy(out.point, out.weights_a[j], a[j]);
  return out;
}

std::optional<Hyperplane> separate(std::span<const Vector> points, const Polytope& P) {
  if (points.empty()) throw PreconditionError("separate: no points given");
  const std::size_t m = P.dim();
  for (const auto& v : points) {
    if (v.size() != m) throw DimensionMismatch("separate: point and polytope dimensions differ");
  }
  // Variables: lambda_0..lambda_{m-1}, kappa, t.
  const std::size_t kappa = m, t = m + 1;
  LinearProgram lp(m + 2);
  for (const auto& v : points) {
    Vector row = zeros(m + 2);
    for (std::size_t s = 0; s < m; ++s) row[s] = v[s];
    row[kappa] = -1;
    row[t] = -1;
    lp.add_constraint(std::move(row), Relation::ge, 0);
  }
  for (const auto& w : P.vertices()) {
    Vector row = zeros(m + 2);
    for (std::size_t s = 0; s < m; ++s) row[s] = w[s];
    row[kappa] = -1;
    row[t] = 1;
    lp.add_constraint(std::move(row), Relation::le, 0);
  }
  for (std::size_t s = 0; s < m; ++s) lp.add_bounds(s, -1, 1);
  lp.add_constraint(unit(m + 2, t), Relation::le, 1);
  lp.maximize(unit(m + 2, t));
  LpSolution sol = lp.solve();
  if (sol.status != LpStatus::optimal || sol.value <= 0) return std::nullopt;
  Hyperplane h{Vector(sol.point.begin(), sol.point.begin() + static_cast<std::ptrdiff_t>(m)),
               sol.point[kappa]};
  return h;
}

bool separates(const Hyperplane& h, std::span<const Vector> above, std::span<const Vector> below) {
  if (is_zero(h.normal)) return false;
  for (const auto& v : above) {
    if (!(dot(h.normal, v) > h.threshold)) return false;
  }
  for (const auto& w : below) {
    if (!(dot(h.normal, w) < h.threshold)) return false;
  }
  return true;
}

Rational support(const Polytope& P, const Vector& direction) {
  require_same_dim(direction, P.vertices().front(), "support");
  if (is_zero(direction)) throw PreconditionError("support: zero direction");
  Rational best = dot(direction, P.vertices().front());
  for (const auto& v : P.vertices()) best = std::max(best, dot(direction, v));
  return best;
}

LpSolution lp_solve(const Vector& objective, const HRep& constraints) {
  if (objective.size() != constraints.dim) throw DimensionMismatch("lp_solve: objective dimension");
  LinearProgram lp(constraints.dim);
  for (const auto& h : constraints.inequalities) lp.add_constraint(h.normal, Relation::le, h.bound);
  for (const auto& h : constraints.equalities) lp.add_constraint(h.normal, Relation::eq, h.bound);
  lp.maximize(objective);
  return lp.solve();
}

std::vector<Vector> remove_redundant(std::span<const Vector> points) {
  if (points.empty()) throw PreconditionError("remove_redundant: empty input");
  std::vector<Vector> kept;
  for (const auto& p : points) {
    require_same_dim(p, points.front(), "remove_redundant");
    if (std::find(kept.begin(), kept.end(), p) == kept.end()) kept.push_back(p);
  }
  // Dropping a non-extreme point never changes which of the remaining points
  // are extreme, so one ordered pass suffices.
  for (std::size_t i = 0; i < kept.size() && kept.size() > 1;) {
    std::vector<Vector> others;
    others.reserve(kept.size() - 1);
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (j != i) others.push_back(kept[j]);
    }
    if (hull_weights(kept[i], others)) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return kept;
}

bool satisfies(const HRep& H, const Vector& x) {
  for (const auto& h : H.inequalities) {
    if (dot(h.normal, x) > h.bound) return false;
  }
  for (const auto& h : H.equalities) {
    if (dot(h.normal, x) != h.bound) return false;
  }
  return true;
}

std::vector<Vector> intersect_polytopes(std::span<const Polytope> polytopes,
                                        std::size_t dimension_cap) {
  if (polytopes.empty()) throw PreconditionError("intersect_polytopes: no polytopes");
  HRep all;
  all.dim = polytopes.front().dim();
  for (const auto& P : polytopes) {
    if (P.dim() != all.dim) throw DimensionMismatch("intersect_polytopes: dimensions differ");
    HRep h = vrep_to_hrep(P, dimension_cap);
    all.inequalities.insert(all.inequalities.end(), h.inequalities.begin(), h.inequalities.end());
    all.equalities.insert(all.equalities.end(), h.equalities.begin(), h.equalities.end());
  }
  return hrep_vertices(all, dimension_cap);
}

}  // namespace bewley
