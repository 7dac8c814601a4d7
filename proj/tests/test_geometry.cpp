#include "support.hpp"

#include "bewley/errors.hpp"

#include <doctest.h>

#include <algorithm>

using namespace bewley;
using bewley::test::interval;
using bewley::test::pa;
using bewley::test::q;
using bewley::test::vec;

namespace {

bool same_set(std::vector<Vector> a, std::vector<Vector> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::size_t affine_dim(const std::vector<Vector>& pts) {
  Matrix diffs;
  for (std::size_t j = 1; j < pts.size(); ++j) diffs.push_back(sub(pts[j], pts[0]));
  return diffs.empty() ? 0 : rank(diffs);
}

// Random belief polytope in the m-simplex with a few generators.
Polytope random_polytope(SplitMix64& rng, std::size_t m) { return random_belief_set(rng, m, 6, 1, 6); }

}  // namespace

TEST_CASE("membership") {
  const Polytope P = interval("0.2", "0.8");
  CHECK(membership(pa("0.5"), P));
  CHECK_FALSE(membership(pa("0.9"), P));
  CHECK(membership(pa("0.3"), Polytope({pa("0.3")})));
  CHECK_THROWS_AS(membership(vec({"1", "0", "0"}), P), DimensionMismatch);
}

TEST_CASE("separation of a point outside an interval") {
  const Polytope P = interval("0.2", "0.8");
  const std::vector<Vector> pts{pa("0.9")};
  const auto h = separate(pts, P);
  REQUIRE(h);
  CHECK(separates(*h, pts, P.vertices()));
  CHECK(separates(Hyperplane{{1, 0}, q("0.85")}, pts, P.vertices()));
  const std::vector<Vector> inside{pa("0.5")};
  CHECK_FALSE(separate(inside, P));
}

TEST_CASE("separation of a combo hull from a singleton") {
  const Polytope P({pa("0.8")});
  const std::vector<Vector> pts{pa("0.6"), pa("0.3")};
  const auto h = separate(pts, P);
  REQUIRE(h);
  CHECK(separates(*h, pts, P.vertices()));
  CHECK(separates(Hyperplane{{0, 1}, q("0.3")}, pts, P.vertices()));
  CHECK_FALSE(separates(Hyperplane{{0, 1}, q("0.4")}, pts, P.vertices()));
}

TEST_CASE("support function") {
  CHECK(support(interval("0.2", "0.8"), {1, 0}) == q("0.8"));
  CHECK(support(Polytope({pa("0.3")}), {2, -1}) == q("-0.1"));
  CHECK_THROWS_AS(support(interval("0.2", "0.8"), {0, 0}), PreconditionError);
}

TEST_CASE("redundant generators are dropped") {
  CHECK(remove_redundant(std::vector<Vector>{pa("0.2"), pa("0.5"), pa("0.8")}) ==
        std::vector<Vector>{pa("0.2"), pa("0.8")});
  CHECK(remove_redundant(std::vector<Vector>{pa("0.3")}) == std::vector<Vector>{pa("0.3")});
  CHECK(remove_redundant(std::vector<Vector>{pa("0.3"), pa("0.3"), pa("0.3")}) == std::vector<Vector>{pa("0.3")});
  CHECK(Polytope({pa("0.8"), pa("0.6"), pa("0.7")}).vertices() == std::vector<Vector>{pa("0.8"), pa("0.6")});
}

TEST_CASE("interval H-representation and round trip") {
  const Polytope P = interval("0.2", "0.8");
  const HRep h = vrep_to_hrep(P);
  REQUIRE(h.equalities.size() == 1);
  CHECK(h.equalities[0].normal == Vector{1, 1});
  CHECK(h.equalities[0].bound == 1);
  REQUIRE(h.inequalities.size() == 2);
  for (const auto& x : {pa("0.2"), pa("0.5"), pa("0.8")}) CHECK(satisfies(h, x));
  for (const auto& x : {pa("0.1"), pa("0.9"), vec({"0.5", "0.6"})}) CHECK_FALSE(satisfies(h, x));
  CHECK(same_set(hrep_vertices(h), P.vertices()));
}

TEST_CASE("simplex and point H-representations") {
  const Polytope simplex({vec({"1", "0", "0"}), vec({"0", "1", "0"}), vec({"0", "0", "1"})});
  const HRep hs = vrep_to_hrep(simplex);
  CHECK(hs.equalities.size() == 1);
  CHECK(hs.inequalities.size() == 3);
  const HRep hp = vrep_to_hrep(Polytope({vec({"0.2", "0.3", "0.5"})}));
  CHECK(hp.equalities.size() == 3);
  CHECK(hp.inequalities.empty());
  CHECK(hrep_vertices(hp) == std::vector<Vector>{vec({"0.2", "0.3", "0.5"})});
}

TEST_CASE("dimension cap") {
  std::vector<Vector> gens;
  for (std::size_t s = 0; s < 8; ++s) gens.push_back(dirac(8, s));
  CHECK_THROWS_AS(vrep_to_hrep(Polytope(gens)), CapExceeded);
  CHECK_NOTHROW(vrep_to_hrep(Polytope(gens), 8));
}

TEST_CASE("exact intersection of intervals") {
  const std::vector<Polytope> ps{interval("0.2", "0.8"), interval("0.6", "0.9")};
  CHECK(same_set(intersect_polytopes(ps), {pa("0.6"), pa("0.8")}));
  const std::vector<Polytope> disjoint{interval("0", "0.4"), interval("0.6", "1")};
  CHECK(intersect_polytopes(disjoint).empty());
}

TEST_CASE("property: facets agree with a brute-force oracle") {
  // Every reported inequality is valid and tight on an affinely (k-1)-dim
  // vertex subset; every facet found by enumerating vertex subsets appears.
  SplitMix64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = 2 + rng.below(3);
    const Polytope P = random_polytope(rng, m);
    const auto& V = P.vertices();
    const std::size_t k = affine_dim(V);
    const HRep h = vrep_to_hrep(P);
    CAPTURE(trial);
    CHECK(h.equalities.size() == m - k);
    for (const auto& v : V) CHECK(satisfies(h, v));
    for (const auto& f : h.inequalities) {
      std::vector<Vector> tight;
      for (const auto& v : V) {
        if (dot(f.normal, v) == f.bound) tight.push_back(v);
      }
      REQUIRE_FALSE(tight.empty());
      CHECK(affine_dim(tight) + 1 == k);
    }
    // Oracle: vertex subsets of affine dimension k-1 that are faces.
    std::size_t oracle = 0;
    if (k > 0) {
      const std::size_t nv = V.size();
      std::vector<std::vector<std::size_t>> faces;
      for (std::uint32_t mask = 1; mask < (1u << nv); ++mask) {
        std::vector<Vector> sub;
        for (std::size_t j = 0; j < nv; ++j) {
          if (mask >> j & 1) sub.push_back(V[j]);
        }
        if (affine_dim(sub) + 1 != k) continue;
        // Face test: some functional is constant on `sub` and strictly
        // smaller on every other vertex.
        std::vector<Vector> rest;
        for (std::size_t j = 0; j < nv; ++j) {
          if (!(mask >> j & 1)) rest.push_back(V[j]);
        }
        LinearProgram lp(m + 2);  // lambda, kappa, t
        for (const auto& v : sub) {
          Vector row(m + 2, Rational(0));
          for (std::size_t s = 0; s < m; ++s) row[s] = v[s];
          row[m] = -1;
          lp.add_constraint(row, Relation::eq, 0);
        }
        for (const auto& v : rest) {
          Vector row(m + 2, Rational(0));
          for (std::size_t s = 0; s < m; ++s) row[s] = v[s];
          row[m] = -1;
          row[m + 1] = 1;
          lp.add_constraint(row, Relation::le, 0);
        }
        for (std::size_t s = 0; s < m; ++s) lp.add_bounds(s, -1, 1);
        lp.add_bounds(m + 1, 0, 1);
        Vector obj(m + 2, Rational(0));
        obj[m + 1] = 1;
        lp.maximize(obj);
        const LpSolution sol = lp.solve();
        const bool face = rest.empty() || (sol.status == LpStatus::optimal && sol.value > 0);
        if (!face) continue;
        // Keep only maximal faces.
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < nv; ++j) {
          if (mask >> j & 1) idx.push_back(j);
        }
        faces.push_back(idx);
      }
      for (const auto& f : faces) {
        bool maximal = true;
        for (const auto& g : faces) {
          if (g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end())) maximal = false;
        }
        if (maximal) ++oracle;
      }
    }
    CHECK(h.inequalities.size() == oracle);
  }
}

TEST_CASE("property: H/V round trip preserves the vertex set") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 2 + rng.below(4);
    const Polytope P = random_polytope(rng, m);
    CAPTURE(trial);
    CHECK(same_set(hrep_vertices(vrep_to_hrep(P)), P.vertices()));
  }
}

TEST_CASE("property: separation and intersection are dual") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 2 + rng.below(3);
    const Polytope A = random_belief_set(rng, m, 10, 1, 3);
    const Polytope B = random_belief_set(rng, m, 10, 1, 3);
    const auto h = separate(A.vertices(), B);
    const auto x = hull_intersection(A.vertices(), B.vertices());
    CAPTURE(trial);
    CHECK(h.has_value() != x.has_value());
    if (h) CHECK(separates(*h, A.vertices(), B.vertices()));
    if (x) {
      CHECK(membership(x->point, A));
      CHECK(membership(x->point, B));
    }
  }
}

TEST_CASE("property: exact intersections match membership") {
  SplitMix64 rng(14);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = 2 + rng.below(3);
    const std::vector<Polytope> ps{random_belief_set(rng, m, 6, 2, 4), random_belief_set(rng, m, 6, 2, 4)};
    const auto I = intersect_polytopes(ps);
    CAPTURE(trial);
    for (const auto& v : I) {
      CHECK(membership(v, ps[0]));
      CHECK(membership(v, ps[1]));
    }
    CHECK(I.empty() == !hull_intersection(ps[0].vertices(), ps[1].vertices()).has_value());
    // Grid points of both polytopes lie in the hull of the reported vertices.
    for (int s = 0; s < 20; ++s) {
      const Vector p = random_simplex_point(rng, m, 6);
      if (membership(p, ps[0]) && membership(p, ps[1])) CHECK(hull_weights(p, I).has_value());
    }
  }
}
