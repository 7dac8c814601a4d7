#pragma once

#include "bewley/linalg.hpp"
#include "bewley/lp.hpp"
#include "bewley/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace bewley {

inline constexpr std::size_t kDefaultDimensionCap = 6;

/// True iff every entry is nonnegative and the entries sum to exactly one.
bool is_simplex_point(const Vector& p);

/// Degenerate distribution on state `s` out of `m`.
Vector dirac(std::size_t m, std::size_t s);

/// Convex hull of finitely many points, stored with its irredundant vertices.
///
/// Vertices keep the order in which they first appear among the generators,
/// so downstream enumerations (vertex combos, certificates) follow the
/// caller's ordering.
class Polytope {
 public:
  explicit Polytope(std::vector<Vector> generators);

  std::size_t dim() const { return dim_; }
  const std::vector<Vector>& generators() const { return generators_; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  bool is_singleton() const { return vertices_.size() == 1; }

  /// Same vertex set, ignoring order.
  bool same_vertices(const Polytope& other) const;

 private:
  std::size_t dim_;
  std::vector<Vector> generators_;
  std::vector<Vector> vertices_;
};

/// Hyperplane {x : normal . x = threshold}.
struct Hyperplane {
  Vector normal;
  Rational threshold;
};

/// normal . x <= bound (inequality) or normal . x == bound (equality).
struct HalfSpace {
  Vector normal;
  Rational bound;
};

struct HRep {
  std::size_t dim = 0;
  std::vector<HalfSpace> inequalities;
  std::vector<HalfSpace> equalities;
};

/// Convex weights mu >= 0, sum mu = 1 with sum mu_j points_j = p, if any.
std::optional<Vector> hull_weights(const Vector& p, std::span<const Vector> points);

bool membership(const Vector& p, const Polytope& P);

/// Common point of conv(a) and conv(b) with the weights that produce it.
struct HullIntersection {
  Vector weights_a;
  Vector weights_b;
  Vector point;
};
std::optional<HullIntersection> hull_intersection(std::span<const Vector> a,
                                                  std::span<const Vector> b);

/// Strictly separating hyperplane with lambda . v > kappa for every v in
/// `points` and lambda . w < kappa for every vertex w of P, found by
/// maximizing the margin under |lambda_s| <= 1. Empty iff conv(points) meets P.
std::optional<Hyperplane> separate(std::span<const Vector> points, const Polytope& P);

/// Direct check of the strict inequalities claimed by `separate`.
bool separates(const Hyperplane& h, std::span<const Vector> above, std::span<const Vector> below);

/// max over P of direction . x. Throws PreconditionError for a zero direction.
Rational support(const Polytope& P, const Vector& direction);

/// Maximize objective . x over the H-represented region (variables free).
LpSolution lp_solve(const Vector& objective, const HRep& constraints);

/// Extreme points of conv(points), duplicates collapsed, first-occurrence order.
std::vector<Vector> remove_redundant(std::span<const Vector> points);

/// Generators of the polyhedral cone {y : a . y >= 0 for every row a}.
struct ConeGenerators {
  std::vector<Vector> lineality;  // basis of the lineality space
  std::vector<Vector> rays;       // extreme rays modulo lineality
};

/// Double description method; rows are inserted in the given order.
ConeGenerators double_description(const Matrix& constraints, std::size_t dim);

/// Facets and affine-hull equalities of P. Equalities are in reduced echelon
/// form (pivoting on the last coordinates); inequalities are reduced modulo
/// the equalities and scaled so their first nonzero coefficient is +-1.
HRep vrep_to_hrep(const Polytope& P, std::size_t dimension_cap = kDefaultDimensionCap);

/// Vertices of a bounded H-represented region, sorted lexicographically.
/// An empty result means the region is empty. Throws PreconditionError when
/// the region is unbounded.
std::vector<Vector> hrep_vertices(const HRep& H, std::size_t dimension_cap = kDefaultDimensionCap);

/// True iff x satisfies every inequality and equality of H.
bool satisfies(const HRep& H, const Vector& x);

/// Exact intersection of the given polytopes (empty when disjoint).
std::vector<Vector> intersect_polytopes(std::span<const Polytope> polytopes,
                                        std::size_t dimension_cap = kDefaultDimensionCap);

}  // namespace bewley
