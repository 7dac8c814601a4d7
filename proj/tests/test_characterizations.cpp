#include "support.hpp"

#include "bewley/errors.hpp"

#include <doctest.h>

#include <algorithm>

using namespace bewley;
using namespace bewley::test;

namespace {

Profile two_agents(Polytope P1, Polytope P2, Vector u1, Vector u2, Vector u0, Polytope P0, Rational e0 = 0) {
  Profile p;
  p.states = P1.dim();
  p.outcome_dim = u1.size();
  p.agents.push_back({"Ann", {std::move(u1), 1}, std::move(P1)});
  p.agents.push_back({"Bob", {std::move(u2), 2}, std::move(P2)});
  p.society = Agent{"society", {std::move(u0), e0}, std::move(P0)};
  return p;
}

Profile second_scenario(Polytope P0) {
  return two_agents(interval("0.6", "0.8"), interval("0.2", "0.3"), {1, 0}, {1, 0}, {1, 0}, std::move(P0));
}

bool same_set(std::vector<Vector> a, std::vector<Vector> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::pair<Rational, Rational> span_of(const std::vector<Vector>& pts) {
  Rational lo = 1, hi = 0;
  for (const auto& v : pts) {
    lo = std::min(lo, v[0]);
    hi = std::max(hi, v[0]);
  }
  return {lo, hi};
}

Polytope random_interval(SplitMix64& rng) {
  return Polytope({pa(Rational(rng.between(0, 10), 10)), pa(Rational(rng.between(0, 10), 10))});
}

}  // namespace

TEST_CASE("utilitarian decomposition") {
  const Polytope P = interval("0.2", "0.8");
  auto d = utilitarian_decompose(two_agents(P, P, {1, 0}, {0, 1}, {q("1/2"), q("1/2")}, P, 5));
  REQUIRE(d);
  CHECK(d->alpha.weights == vec({"1/2", "1/2"}));
  CHECK(d->beta == 5 - q("1/2") * 1 - q("1/2") * 2);
  CHECK_FALSE(utilitarian_decompose(two_agents(P, P, {1, 0}, {0, 1}, {1, -1}, P)));
  d = utilitarian_decompose(two_agents(P, P, {1, 0}, {0, 1}, {1, 0}, P, 4));
  REQUIRE(d);
  CHECK(d->alpha.weights == Vector{1, 0});
  CHECK(d->beta == 3);
  // Forcing a support the coefficients cannot use.
  CHECK_FALSE(utilitarian_decompose(two_agents(P, P, {1, 0}, {0, 1}, {1, 0}, P), std::vector<std::size_t>{0, 1}));
}

TEST_CASE("Pareto* inclusion condition") {
  const Polytope P = interval("0.2", "0.8");
  CHECK(check_eq1_dght1(two_agents(P, P, {1, 0}, {0, 1}, {1, 1}, P)).holds());
  CHECK(check_eq1_dght1(load("example1.profile").profile).holds());
  const ConditionReport r = check_eq1_dght1(
      two_agents(Polytope({pa("0.3")}), Polytope({pa("0.7")}), {1, 0}, {0, 1}, {1, 1}, Polytope({pa("0.5")})));
  CHECK(r.status == Status::fails);
}

TEST_CASE("dictator or common singleton condition") {
  const ConditionReport a = check_thm1_condition(load("common_singleton.profile").profile);
  CHECK(a.holds());
  CHECK(a.part_a == Status::holds);
  CHECK(revalidate(load("common_singleton.profile").profile, a));
  const ConditionReport b = check_thm1_condition(load("dictator.profile").profile);
  CHECK(b.holds());
  CHECK(b.part_b == Status::holds);
  const ConditionReport c = check_thm1_condition(load("example1.profile").profile);
  CHECK(c.status == Status::fails);
  const ConditionReport unmet = check_thm1_condition(second_scenario(interval("0.2", "0.8")));
  CHECK(unmet.status == Status::precondition_unmet);
}

TEST_CASE("superset condition for positively weighted agents") {
  const Polytope P1 = interval("0.3", "0.6"), P2 = interval("0.2", "0.8");
  const Profile hull = two_agents(P1, P2, {1, 0}, {0, 1}, {1, 1}, P2);
  CHECK(check_lemma1_superset(hull, *utilitarian_decompose(hull)).holds());
  const Profile narrow = two_agents(P1, P2, {1, 0}, {0, 1}, {1, 1}, P1);
  const ConditionReport r = check_lemma1_superset(narrow, *utilitarian_decompose(narrow));
  CHECK(r.status == Status::fails);
  CHECK(revalidate(narrow, r));
  const Profile dictator = two_agents(P1, P2, {1, 0}, {0, 1}, {1, 0}, P1);
  CHECK(check_lemma1_superset(dictator, *utilitarian_decompose(dictator)).holds());
}

TEST_CASE("hull inclusion condition") {
  CHECK(check_eq4_dght2(second_scenario(Polytope({pa("0.8")}))).holds());
  const ConditionReport r = check_eq4_dght2(second_scenario(Polytope({pa("1")})));
  CHECK(r.status == Status::fails);
  CHECK(revalidate(second_scenario(Polytope({pa("1")})), r));
  CHECK(check_eq4_dght2(second_scenario(interval("0.6", "0.8"))).holds());
}

TEST_CASE("vertex-combo condition") {
  const Profile mid = second_scenario(interval("0.3", "0.6"));
  const ConditionReport ok = check_thm2_condition(mid);
  CHECK(ok.holds());
  CHECK(ok.combos.size() == 4);
  CHECK(revalidate(mid, ok));
  const Profile single = load("example2_p08.profile").profile;
  const ConditionReport bad = check_thm2_condition(single);
  CHECK(bad.status == Status::fails);
  REQUIRE(bad.failing_combo);
  CHECK(combo_points(belief_sets(single), *bad.failing_combo) == std::vector<Vector>{pa("0.6"), pa("0.3")});
  REQUIRE(bad.hyperplane);
  CHECK(separates(*bad.hyperplane, bad.failing_points, single.society->beliefs.vertices()));
  CHECK(revalidate(single, bad));
  const Profile common =
      two_agents(Polytope({pa("0.4")}), Polytope({pa("0.4")}), {1, 0}, {0, 1}, {1, 1}, interval("0.2", "0.8"));
  CHECK(check_thm2_condition(common).holds());
  const Profile opposed = two_agents(interval("0.2", "0.8"), interval("0.2", "0.8"), {1, 0}, {-1, 0}, {1, 0},
                                     interval("0.2", "0.8"));
  CHECK(check_thm2_condition(opposed).status == Status::precondition_unmet);
}

TEST_CASE("combo cap") {
  std::vector<Polytope> many(5, interval("0.1", "0.9"));
  CHECK(combo_count(many, 32) == 32);
  CHECK_THROWS_AS(combo_count(many, 31), CapExceeded);
}

TEST_CASE("intersection condition") {
  const Profile a = two_agents(interval("0.2", "0.8"), interval("0.6", "0.9"), {1, 0}, {0, 1}, {1, 1},
                               interval("0.5", "0.85"));
  const ConditionReport r = check_corollary2(a);
  CHECK(r.part_a == Status::holds);
  CHECK(same_set(r.intersection, {pa("0.6"), pa("0.8")}));
  const Polytope P = interval("0.2", "0.8");
  const ConditionReport same = check_corollary2(two_agents(P, P, {1, 0}, {0, 1}, {1, 1}, P));
  CHECK(same.part_a == Status::holds);
  CHECK(same.part_b == Status::holds);
  const ConditionReport narrow = check_corollary2(two_agents(P, P, {1, 0}, {0, 1}, {1, 1}, interval("0.3", "0.8")));
  CHECK(narrow.part_b == Status::fails);
}

TEST_CASE("common SEU prior") {
  const auto p = check_seu_existence({interval("0.6", "0.8"), interval("0.2", "0.3")});
  REQUIRE(p);
  CHECK((*p)[0] >= q("0.3"));
  CHECK((*p)[0] <= q("0.6"));
  CHECK(check_seu_existence({Polytope({pa("0.4")}), Polytope({pa("0.4")})}) == pa("0.4"));
  CHECK_FALSE(check_seu_existence({interval("0", "0.6"), interval("0.4", "1")}));
}

TEST_CASE("delegating conditions") {
  for (const char* name : {"example2_p08.profile", "example2_mid.profile", "example1.profile"}) {
    const Profile prof = load(name).profile;
    const ConditionReport p1 = check_prop1(prof), p2 = check_prop2(prof);
    CHECK(p1.status == check_eq4_dght2(prof).status);
    CHECK(p2.status == check_thm2_condition(prof).status);
    CHECK_FALSE(p1.note.empty());
  }
}

TEST_CASE("rule-based societies") {
  const Polytope P = interval("0.2", "0.8");
  const Profile same = two_agents(P, P, {1, 0}, {0, 1}, {1, 1}, P);
  const WeightVector alpha{{1, 1}};
  CHECK(aggregate_society(same, alpha, 0, rule::Minkowski{{{q("1/2"), q("1/2")}}}).beliefs.same_vertices(P));
  const Profile second = second_scenario(P);
  CHECK(aggregate_society(second, WeightVector{{1, 0}}, 0, rule::HullUnion{}).beliefs.same_vertices(P));
  CHECK(aggregate_society(second, alpha, 0, rule::Minkowski{{{1, 0}}}).beliefs.same_vertices(second.agents[0].beliefs));
  const Agent s = aggregate_society(second, WeightVector{{2, 3}}, 7, rule::Given{{pa("0.5")}});
  CHECK(s.utility.coeffs == Vector{5, 0});
  CHECK(s.utility.constant == 2 * 1 + 3 * 2 + 7);
  CHECK_THROWS_AS(aggregate_society(second, WeightVector{{0, 0}}, 0, rule::HullUnion{}), PreconditionError);
  CHECK_THROWS_AS(aggregate_society(second, alpha, 0, rule::Minkowski{{{q("1/2"), q("1/3")}}}), PreconditionError);
}

TEST_CASE("condition names round trip") {
  for (Condition c : {Condition::eq1, Condition::thm1, Condition::lemma1, Condition::eq4, Condition::thm2,
                      Condition::corollary2, Condition::seu, Condition::prop1, Condition::prop2}) {
    CHECK(parse_condition(condition_name(c)) == c);
  }
}

TEST_CASE("property: two-state interval oracle for combos and SEU priors") {
  SplitMix64 rng(41);
  std::size_t holds = 0, fails = 0, seu = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 2 + rng.below(2);
    Profile prof;
    prof.states = 2;
    prof.outcome_dim = 1;
    for (std::size_t i = 0; i < n; ++i) prof.agents.push_back({"a", {{1}, 0}, random_interval(rng)});
    prof.society = Agent{"society", {{2}, 0}, random_interval(rng)};
    const auto beliefs = belief_sets(prof);
    const auto [lo0, hi0] = span_of(prof.society->beliefs.vertices());
    bool every = true;
    Rational max_lo = 0, min_hi = 1;
    for_each_combo(beliefs, [&](const VertexCombo& c) {
      const auto [lo, hi] = span_of(combo_points(beliefs, c));
      every = every && hi >= lo0 && lo <= hi0;
      max_lo = std::max(max_lo, lo);
      min_hi = std::min(min_hi, hi);
      return true;
    });
    const ConditionReport r = check_thm2_condition(prof);
    CAPTURE(t);
    CHECK(r.holds() == every);
    CHECK(revalidate(prof, r));
    (every ? holds : fails)++;
    const auto p = check_seu_existence(beliefs);
    CHECK(p.has_value() == (max_lo <= min_hi));
    if (p) {
      ++seu;
      CHECK((*p)[0] >= max_lo);
      CHECK((*p)[0] <= min_hi);
    }
  }
  CHECK(holds > 0);
  CHECK(fails > 0);
  CHECK(seu > 0);
}

TEST_CASE("property: monotonicity in the social beliefs") {
  SplitMix64 rng(42);
  std::size_t grown = 0, shrunk = 0;
  for (std::uint64_t k = 0; k < 120; ++k) {
    GenParams g;
    g.seed = 300 + k;
    g.n = 2 + k % 2;
    g.m = 2 + (k / 2) % 2;
    g.society_rule = k % 2 ? SocietyRuleTag::hull_union : SocietyRuleTag::perturbed;
    g.hypothesis = Hypothesis::minimal_agreement;
    const Profile prof = random_profile(g);
    const auto& W = prof.society->beliefs.vertices();
    if (check_thm2_condition(prof).holds()) {
      auto more = W;
      more.push_back(random_simplex_point(rng, prof.states, 10));
      Profile bigger = prof;
      bigger.society->beliefs = Polytope(more);
      CHECK(check_thm2_condition(bigger).holds());
      ++grown;
    }
    if (check_eq4_dght2(prof).holds()) {
      Vector mu;
      for (std::size_t j = 0; j < W.size(); ++j) mu.push_back(Rational(rng.between(0, 4)));
      if (is_zero(mu)) mu[0] = 1;
      Vector p = zeros(prof.states);
      for (std::size_t j = 0; j < W.size(); ++j) axpy(p, mu[j] / sum(mu), W[j]);
      Profile smaller = prof;
      smaller.society->beliefs = Polytope({W.front(), p});
      CHECK(check_eq4_dght2(smaller).holds());
      ++shrunk;
    }
  }
  CHECK(grown > 10);
  CHECK(shrunk > 10);
}

TEST_CASE("property: rule-based societies pass both conditions") {
  SplitMix64 rng(43);
  for (std::uint64_t k = 0; k < 80; ++k) {
    GenParams g;
    g.seed = 400 + k;
    g.n = 2 + k % 2;
    g.m = 2 + (k / 2) % 2;
    g.hypothesis = Hypothesis::minimal_agreement;
    Profile prof = random_profile(g);
    const WeightVector alpha{Vector(prof.size(), Rational(1))};
    const WeightVector gamma = random_distribution(rng, prof.size(), 6);
    for (const SocietyRule& r : {SocietyRule{rule::Minkowski{gamma}}, SocietyRule{rule::HullUnion{}}}) {
      prof.society = aggregate_society(prof, alpha, 0, r);
      CHECK(check_eq4_dght2(prof).holds());
      CHECK(check_thm2_condition(prof).holds());
    }
  }
}

TEST_CASE("property: passing combos keep the exact intersection inside") {
  std::size_t checked = 0;
  for (std::uint64_t k = 0; k < 300 && checked < 30; ++k) {
    GenParams g;
    g.seed = 500 + k;
    g.denominator = 4;
    g.society_rule = k % 2 ? SocietyRuleTag::perturbed : SocietyRuleTag::minkowski;
    g.hypothesis = Hypothesis::minimal_agreement;
    const Profile prof = random_profile(g);
    if (!check_thm2_condition(prof).holds()) continue;
    const ConditionReport r = check_corollary2(prof);
    if (r.intersection.empty()) continue;
    ++checked;
    for (const auto& v : r.intersection) CHECK(membership(v, prof.society->beliefs));
  }
  CHECK(checked > 0);
}
