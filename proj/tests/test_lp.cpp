#include "support.hpp"

#include <doctest.h>

using namespace bewley;
using bewley::test::q;

TEST_CASE("corner of the simplex") {
  LinearProgram lp(2);
  lp.require_all_nonnegative();
  lp.add_constraint({1, 1}, Relation::eq, 1);
  lp.maximize({1, 0});
  const LpSolution s = lp.solve();
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.point == Vector{1, 0});
  CHECK(s.value == 1);
}

TEST_CASE("contradictory bounds are infeasible") {
  LinearProgram lp(1);
  lp.add_constraint({1}, Relation::le, 3);
  lp.add_constraint({1}, Relation::ge, 5);
  lp.maximize({1});
  CHECK(lp.solve().status == LpStatus::infeasible);
}

TEST_CASE("a ray is unbounded") {
  LinearProgram lp(1);
  lp.add_constraint({1}, Relation::ge, 0);
  lp.maximize({1});
  CHECK(lp.solve().status == LpStatus::unbounded);
}

TEST_CASE("the same problem through an H-representation") {
  HRep h{2, {{{-1, 0}, 0}, {{0, -1}, 0}}, {{{1, 1}, 1}}};
  const LpSolution s = lp_solve({1, 0}, h);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.point == Vector{1, 0});
  CHECK(s.value == 1);
}

TEST_CASE("free variables and fractional optimum") {
  // max x + y s.t. 2x + y <= 4, x + 3y <= 6, x, y free but x >= -10.
  LinearProgram lp(2);
  lp.add_constraint({2, 1}, Relation::le, 4);
  lp.add_constraint({1, 3}, Relation::le, 6);
  lp.add_constraint({1, 0}, Relation::ge, -10);
  lp.maximize({1, 1});
  const LpSolution s = lp.solve();
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.point == Vector{q("6/5"), q("8/5")});
  CHECK(s.value == q("14/5"));
}

TEST_CASE("degenerate problem terminates under Bland's rule") {
  // Beale's classic cycling example.
  LinearProgram lp(4);
  lp.require_all_nonnegative();
  lp.add_constraint({q("1/4"), -60, q("-1/25"), 9}, Relation::le, 0);
  lp.add_constraint({q("1/2"), -90, q("-1/50"), 3}, Relation::le, 0);
  lp.add_constraint({0, 0, 1, 0}, Relation::le, 1);
  lp.maximize({q("3/4"), -150, q("1/50"), -6});
  const LpSolution s = lp.solve();
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.value == q("1/20"));
}

TEST_CASE("random feasibility problems agree with a brute-force vertex oracle") {
  // Maximize over {x in R^2 : a_k . x <= b_k} inside the box [-5, 5]^2 by
  // enumerating all pairwise constraint intersections.
  SplitMix64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<HalfSpace> rows{{{1, 0}, 5}, {{-1, 0}, 5}, {{0, 1}, 5}, {{0, -1}, 5}};
    const int extra = 1 + static_cast<int>(rng.below(4));
    for (int k = 0; k < extra; ++k) {
      rows.push_back({{Rational(rng.between(-3, 3)), Rational(rng.between(-3, 3))}, Rational(rng.between(-4, 4))});
    }
    const Vector c{Rational(rng.between(-3, 3)), Rational(rng.between(-3, 3))};
    std::optional<Rational> best;
    for (std::size_t a = 0; a < rows.size(); ++a) {
      for (std::size_t b = a + 1; b < rows.size(); ++b) {
        const Rational det = rows[a].normal[0] * rows[b].normal[1] - rows[a].normal[1] * rows[b].normal[0];
        if (det == 0) continue;
        const Vector x{(rows[a].bound * rows[b].normal[1] - rows[a].normal[1] * rows[b].bound) / det,
                       (rows[a].normal[0] * rows[b].bound - rows[a].bound * rows[b].normal[0]) / det};
        bool ok = true;
        for (const auto& r : rows) ok = ok && dot(r.normal, x) <= r.bound;
        if (ok && (!best || dot(c, x) > *best)) best = dot(c, x);
      }
    }
    const LpSolution s = lp_solve(c, HRep{2, rows, {}});
    CAPTURE(trial);
    if (!best) {
      CHECK(s.status == LpStatus::infeasible);
    } else {
      REQUIRE(s.status == LpStatus::optimal);
      CHECK(s.value == *best);
      for (const auto& r : rows) CHECK(dot(r.normal, s.point) <= r.bound);
    }
  }
}
