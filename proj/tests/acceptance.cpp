// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include "bewley/document.hpp"
#include "bewley/errors.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace bewley;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Vector pa(const Rational& a) { return {a, 1 - a}; }
Vector pa(const char* a) { return pa(parse_rational(a)); }
Polytope interval(const char* lo, const char* hi) { return Polytope({pa(lo), pa(hi)}); }

Act status_quo() { return Act::constant({0, 0}, 2); }
Act reform() { return Act({{30, -70}, {-70, 30}}); }
Act common_reform() { return Act({{30, 30}, {-70, -70}}); }

Profile first_scenario(const Polytope& P0) {
  Profile p;
  p.states = 2;
  p.outcome_dim = 2;
  p.agents.push_back({"Ann", {{1, 0}, 0}, interval("0.2", "0.8")});
  p.agents.push_back({"Bob", {{0, 1}, 0}, interval("0.2", "0.8")});
  p.society = Agent{"society", {{Rational(1, 2), Rational(1, 2)}, 0}, P0};
  return p;
}

Profile second_scenario(const Polytope& P0) {
  Profile p;
  p.states = 2;
  p.outcome_dim = 2;
  p.agents.push_back({"Ann", {{1, 0}, 0}, Polytope({pa("0.8"), pa("0.6")})});
  p.agents.push_back({"Bob", {{1, 0}, 0}, Polytope({pa("0.3"), pa("0.2")})});
  p.society = Agent{"society", {{1, 0}, 0}, P0};
  return p;
}

// Desk-scale generator parameters for trial k.
GenParams desk_params(std::uint64_t seed, std::uint64_t k, SocietyRuleTag rule, Hypothesis h) {
  SplitMix64 rng(seed * 1000003 + k);
  GenParams g;
  g.seed = rng.next();
  g.n = 2 + rng.below(2);
  g.m = 2 + rng.below(2);
  g.d = 1 + rng.below(3);
  if (h == Hypothesis::diversity && g.d < g.n) g.d = g.n;
  g.max_vertices = 3;
  g.society_rule = rule;
  g.hypothesis = h;
  return g;
}

Outcome criterion1() {
  Outcome o;
  const std::vector<Polytope> socials{interval("0.2", "0.8"), Polytope({pa("0.5")}), Polytope({pa("0.2")}),
                                      Polytope({pa("0.8")}),   interval("0.3", "0.6"), interval("0", "1")};
  for (const auto& P0 : socials) {
    const Profile prof = first_scenario(P0);
    if (!bewley_incomparable(prof.agents[0], status_quo(), reform()) ||
        !bewley_incomparable(prof.agents[1], status_quo(), reform())) {
      return {false, "agents are not incomparable on (status quo, reform)"};
    }
    const AxiomVerdict v = pareto_star_check(prof, status_quo(), reform());
    if (!v.violation || !revalidate(prof, status_quo(), reform(), v)) {
      return {false, "no re-validated Pareto* violation for social beliefs " + format(P0.vertices().front())};
    }
  }
  o.detail = "both agents incomparable; Pareto* violated under " + std::to_string(socials.size()) + " social belief sets";
  return o;
}

Outcome criterion2() {
  const Profile prof = second_scenario(Polytope({pa("0.8")}));
  const AxiomVerdict v = ct_pareto_star_check(prof, common_reform(), status_quo());
  if (!v.violation || !revalidate(prof, common_reform(), status_quo(), v)) return {false, "no CT-Pareto* violation"};
  const ConditionReport thm2 = check_thm2_condition(prof);
  if (thm2.status != Status::fails || !revalidate(prof, thm2)) return {false, "vertex-combo condition did not fail"};
  const auto w = witness_thm2(prof);
  if (!w || !revalidate(prof, *w) || !ct_pareto_star_check(prof, w->act_x, w->act_f).violation) {
    return {false, "witness did not re-validate"};
  }
  const ConditionReport eq4 = check_eq4_dght2(prof);
  if (!eq4.holds() || !revalidate(prof, eq4)) return {false, "hull-inclusion condition did not hold"};
  return {true, "CT-Pareto* violated; vertex-combo condition fails at combo " +
                    format((*w).per_agent[0].prior) + "," + format((*w).per_agent[1].prior) +
                    " with a re-validated witness; hull inclusion holds"};
}

Outcome criterion3() {
  const std::vector<Polytope> beliefs{interval("0.6", "0.8"), interval("0.2", "0.3")};
  const auto p = check_seu_existence(beliefs);
  if (!p) return {false, "no common prior found"};
  if ((*p)[0] < parse_rational("0.3") || (*p)[0] > parse_rational("0.6")) {
    return {false, "prior " + format(*p) + " outside [0.3, 0.6]"};
  }
  std::size_t combos = 0;
  bool ok = true;
  for_each_combo(beliefs, [&](const VertexCombo& c) {
    ++combos;
    ok = ok && hull_weights(*p, combo_points(beliefs, c)).has_value();
    return true;
  });
  if (!ok || combos != 4) return {false, "membership in a vertex-combo hull failed"};
  return {true, "common prior " + format(*p) + " lies in all 4 vertex-combo hulls"};
}

Outcome criterion4() {
  const SocietyRuleTag rules[] = {SocietyRuleTag::minkowski, SocietyRuleTag::hull_union, SocietyRuleTag::perturbed};
  std::size_t passes = 0, fails = 0;
  for (std::uint64_t k = 0; k < 210; ++k) {
    const Profile prof = random_profile(desk_params(4, k, rules[k % 3], Hypothesis::minimal_agreement));
    FuzzOptions fo;
    fo.trials = 1000;
    fo.seed = k;
    const CrossValidation cv = cross_validate(prof, Condition::thm2, fo);
    if (cv.verdict != Consistency::consistent) return {false, "profile " + std::to_string(k) + ": " + cv.detail};
    (cv.checker_status == Status::holds ? passes : fails)++;
  }
  return {true, "210 profiles CONSISTENT (" + std::to_string(passes) + " condition-pass with 1000 fuzz pairs each, " +
                    std::to_string(fails) + " condition-fail with validated witnesses)"};
}

Outcome criterion5() {
  std::size_t spurious = 0, lemma = 0;
  for (std::uint64_t k = 0; spurious < 60 && k < 5000; ++k) {
    GenParams g = desk_params(5, k, SocietyRuleTag::none, Hypothesis::diversity);
    g.min_vertices = 2;
    Profile prof = random_profile(g);
    SplitMix64 rng(g.seed ^ 0x5A5A5A5AULL);
    WeightVector alpha{zeros(prof.size())};
    for (auto& a : alpha.weights) a = Rational(rng.between(1, 4), rng.between(1, 3));
    const Polytope P0 = random_belief_set(rng, prof.states, 10, 1, 3);
    prof.society = aggregate_society(prof, alpha, rng.between(-2, 2), rule::Given{P0.vertices()});
    const auto dec = utilitarian_decompose(prof);
    if (!dec) return {false, "c-diverse profile without a decomposition"};
    // Two positively weighted multi-prior agents with distinct priors.
    std::optional<SpuriousChoice> choice;
    for (std::size_t a = 0; a < prof.size() && !choice; ++a) {
      for (std::size_t b = a + 1; b < prof.size() && !choice; ++b) {
        if (dec->alpha[a] <= 0 || dec->alpha[b] <= 0) continue;
        if (prof.agents[a].beliefs.is_singleton() || prof.agents[b].beliefs.is_singleton()) continue;
        const Vector& p1 = prof.agents[a].beliefs.vertices()[rng.below(prof.agents[a].beliefs.vertices().size())];
        for (const auto& p2 : prof.agents[b].beliefs.vertices()) {
          if (p2 != p1) {
            choice = SpuriousChoice{a, b, p1, p2};
            break;
          }
        }
      }
    }
    if (!choice) continue;
    const auto w = witness_spurious_unanimity(prof, *dec, choice->i1, choice->i2, choice->p1, choice->p2);
    if (!revalidate(prof, w) || !pareto_star_check(prof, w.act_x, w.act_f).violation) {
      return {false, "spurious-unanimity witness failed on profile " + std::to_string(k)};
    }
    ++spurious;
    for (std::size_t i = 0; i < prof.size(); ++i) {
      if (dec->alpha[i] <= 0) continue;
      for (const auto& v : prof.agents[i].beliefs.vertices()) {
        if (membership(v, prof.society->beliefs)) continue;
        const auto l = witness_lemma1(prof, *dec, i, v);
        if (!revalidate(prof, l) || !pareto_star_check(prof, l.act_x, l.act_f).violation) {
          return {false, "lemma witness failed on profile " + std::to_string(k)};
        }
        ++lemma;
      }
    }
  }
  if (spurious < 50) return {false, "only " + std::to_string(spurious) + " eligible profiles generated"};
  return {true, std::to_string(spurious) + " spurious-unanimity and " + std::to_string(lemma) +
                    " lemma witnesses re-validated and violate Pareto*"};
}

Outcome criterion6() {
  std::size_t checked = 0;
  for (std::uint64_t k = 0; k < 110; ++k) {
    GenParams g = desk_params(6, k, SocietyRuleTag::none, Hypothesis::minimal_agreement);
    Profile prof = random_profile(g);
    SplitMix64 rng(g.seed + 17);
    WeightVector alpha{zeros(prof.size())};
    while (is_zero(alpha.weights)) {
      for (auto& a : alpha.weights) a = rng.between(0, 3);
    }
    const WeightVector gamma = random_distribution(rng, prof.size(), 12);
    for (const SocietyRule& r : {SocietyRule{rule::Minkowski{gamma}}, SocietyRule{rule::HullUnion{}}}) {
      prof.society = aggregate_society(prof, alpha, 0, r);
      const ConditionReport eq4 = check_eq4_dght2(prof);
      const ConditionReport thm2 = check_thm2_condition(prof);
      if (!eq4.holds() || !thm2.holds() || !revalidate(prof, eq4) || !revalidate(prof, thm2)) {
        return {false, "profile " + std::to_string(k) + " failed with rule " + std::to_string(r.index())};
      }
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " Minkowski/hull-union societies pass both conditions"};
}

Outcome criterion7() {
  std::size_t equal = 0, different = 0;
  for (std::uint64_t k = 0; k < 60; ++k) {
    GenParams g = desk_params(7, k, SocietyRuleTag::none, Hypothesis::minimal_agreement);
    g.common_beliefs = true;
    Profile prof = random_profile(g);
    SplitMix64 rng(g.seed + 99);
    const Polytope& P = prof.agents[0].beliefs;
    WeightVector alpha{Vector(prof.size(), Rational(1))};
    std::vector<std::vector<Vector>> candidates{P.vertices()};
    candidates.push_back(random_belief_set(rng, prof.states, 10, 1, 3).vertices());
    auto grown = P.vertices();
    grown.push_back(random_simplex_point(rng, prof.states, 10));
    candidates.push_back(grown);
    if (P.vertices().size() > 1) {
      candidates.push_back({P.vertices().begin(), P.vertices().end() - 1});
    }
    for (const auto& c : candidates) {
      prof.society = aggregate_society(prof, alpha, 0, rule::Given{c});
      const bool both = check_thm2_condition(prof).holds() && check_eq4_dght2(prof).holds();
      const Polytope& P0 = prof.society->beliefs;
      const bool same = std::all_of(P0.vertices().begin(), P0.vertices().end(),
                                    [&](const Vector& v) { return membership(v, P); }) &&
                        std::all_of(P.vertices().begin(), P.vertices().end(),
                                    [&](const Vector& v) { return membership(v, P0); });
      if (both != same) return {false, "common-belief profile " + std::to_string(k) + " breaks the equivalence"};
      (same ? equal : different)++;
    }
  }
  std::size_t intersections = 0;
  const SocietyRuleTag rules[] = {SocietyRuleTag::minkowski, SocietyRuleTag::hull_union, SocietyRuleTag::perturbed};
  for (std::uint64_t k = 0; k < 300; ++k) {
    GenParams g = desk_params(77, k, rules[k % 3], Hypothesis::minimal_agreement);
    g.denominator = 4;
    const Profile prof = random_profile(g);
    if (!check_thm2_condition(prof).holds()) continue;
    const ConditionReport c2 = check_corollary2(prof);
    if (c2.intersection.empty()) continue;
    if (c2.part_a != Status::holds || !revalidate(prof, c2)) {
      return {false, "intersection vertex outside the social beliefs on profile " + std::to_string(k)};
    }
    ++intersections;
  }
  if (intersections == 0) return {false, "no general profile with a nonempty intersection was generated"};
  return {true, std::to_string(equal) + " equal and " + std::to_string(different) +
                    " unequal social belief sets classified correctly; " + std::to_string(intersections) +
                    " general profiles keep the intersection inside the social beliefs"};
}

Outcome criterion8() {
  std::size_t pairs = 0, ex_hits = 0, ex_star_hits = 0, profiles = 0;
  const SocietyRuleTag rules[] = {SocietyRuleTag::minkowski, SocietyRuleTag::hull_union, SocietyRuleTag::perturbed};
  for (std::uint64_t k = 0; k < 60; ++k) {
    const Profile prof = random_profile(desk_params(8, k, rules[k % 3], Hypothesis::minimal_agreement));
    if (check_prop1(prof).status != check_eq4_dght2(prof).status ||
        check_prop2(prof).status != check_thm2_condition(prof).status) {
      return {false, "delegated verdicts differ on profile " + std::to_string(k)};
    }
    ++profiles;
    const auto agreement = check_c_minimal_agreement(prof);
    for (std::uint64_t t = 0; t < 200; ++t) {
      SplitMix64 rng = trial_stream(k, t);
      const auto [f, g] = sample_pair(rng, prof, t % 2 ? Sampler::common_taste : Sampler::general, agreement);
      if (!no_taste_disagreement(prof, f, g)) continue;
      ++pairs;
      const auto ex = exchange_pareto_check(prof, f, g);
      const auto ex_star = exchange_pareto_star_check(prof, f, g);
      if (ex.premise_holds) {
        ++ex_hits;
        if (!ct_pareto_check(prof, f, g).premise_holds) return {false, "Exchange Pareto premise without CT premise"};
      }
      if (ex_star.premise_holds) {
        ++ex_star_hits;
        if (!ct_pareto_star_check(prof, f, g).premise_holds) {
          return {false, "Exchange Pareto* premise without CT premise"};
        }
      }
    }
  }
  for (const char* name : {"example1.profile", "example2_p08.profile", "example2_hull.profile",
                           "example2_mid.profile", "common_singleton.profile", "dictator.profile"}) {
    const Profile prof = load_profile(std::string(BEWLEY_DATA_DIR) + "/" + name).profile;
    if (check_prop1(prof).status != check_eq4_dght2(prof).status ||
        check_prop2(prof).status != check_thm2_condition(prof).status) {
      return {false, std::string("delegated verdicts differ on ") + name};
    }
    ++profiles;
  }
  return {true, std::to_string(pairs) + " pairs without taste disagreement (" + std::to_string(ex_hits) + " Exchange Pareto and " +
                    std::to_string(ex_star_hits) + " Exchange Pareto* premises, all implying CT premises); " +
                    std::to_string(profiles) + " profiles with matching delegated verdicts"};
}

Outcome criterion9() {
  std::size_t profiles = 0;
  const SocietyRuleTag rules[] = {SocietyRuleTag::minkowski, SocietyRuleTag::hull_union, SocietyRuleTag::perturbed};
  for (std::uint64_t k = 0; profiles < 100 && k < 2000; ++k) {
    const Profile prof = random_profile(desk_params(9, k, rules[k % 3], Hypothesis::minimal_agreement));
    if (!check_thm2_condition(prof).holds()) continue;
    ++profiles;
    const auto& W = prof.society->beliefs.vertices();
    SplitMix64 rng(k);
    for (int t = 0; t < 1000; ++t) {
      std::vector<Vector> combo;
      for (const auto& a : prof.agents) {
        const auto& V = a.beliefs.vertices();
        // Strictly positive weights put the point off the vertices.
        Vector mu;
        for (std::size_t j = 0; j < V.size(); ++j) mu.push_back(Rational(rng.between(1, 20)));
        const Rational total = sum(mu);
        Vector p = zeros(prof.states);
        for (std::size_t j = 0; j < V.size(); ++j) axpy(p, mu[j] / total, V[j]);
        combo.push_back(std::move(p));
      }
      if (!hull_intersection(combo, W)) {
        return {false, "interior combo misses the social beliefs on profile " + std::to_string(k)};
      }
    }
  }
  if (profiles < 100) return {false, "only " + std::to_string(profiles) + " passing profiles generated"};
  return {true, "100 passing profiles x 1000 interior combos, every hull meets the social beliefs"};
}

std::string report_battery(std::size_t jobs) {
  std::ostringstream out;
  for (const char* name : {"example1.profile", "example2_p08.profile", "example2_hull.profile"}) {
    const ProfileDocument doc = load_profile(std::string(BEWLEY_DATA_DIR) + "/" + name);
    for (Axiom a : {Axiom::pareto_star, Axiom::ct_pareto_star, Axiom::exch_pareto_star}) {
      FuzzOptions fo;
      fo.trials = 300;
      fo.seed = 42;
      fo.jobs = jobs;
      fo.planted = doc.planted;
      fo.sampler = a == Axiom::pareto_star ? Sampler::general : Sampler::common_taste;
      out << to_json(fuzz_axiom(doc.profile, a, fo)).dump() << "\n";
    }
    for (Condition c : {Condition::eq4, Condition::thm2, Condition::corollary2, Condition::seu}) {
      out << to_json(check_condition(c, doc.profile)).dump() << "\n";
    }
  }
  for (std::uint64_t k = 0; k < 20; ++k) {
    const Profile prof = random_profile(desk_params(10, k, SocietyRuleTag::perturbed, Hypothesis::minimal_agreement));
    FuzzOptions fo;
    fo.trials = 200;
    fo.seed = k;
    fo.jobs = jobs;
    out << to_json(cross_validate(prof, Condition::thm2, fo)).dump() << "\n";
  }
  return out.str();
}

Outcome criterion10() {
  const std::string a = report_battery(1);
  const std::string b = report_battery(1);
  const std::string c = report_battery(4);
  if (a != b) return {false, "repeated runs differ"};
  if (a != c) return {false, "parallel run differs from the serial one"};
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : a) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return {true, "three runs (serial, serial, 4 jobs) byte-identical: " + std::to_string(a.size()) +
                    " bytes, FNV-1a " + hex_digest(h)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"first scenario: incomparability and Pareto* violation", criterion1},
      {"second scenario: CT-Pareto* violation, combo failure, hull inclusion", criterion2},
      {"common SEU prior between 0.3 and 0.6", criterion3},
      {"vertex-combo condition cross-validation", criterion4},
      {"spurious-unanimity and lemma witnesses", criterion5},
      {"Minkowski and hull-union societies pass both conditions", criterion6},
      {"common belief sets and exact intersections", criterion7},
      {"exchange premises and delegated verdicts", criterion8},
      {"interior combos never escape the social beliefs", criterion9},
      {"deterministic machine-readable reports", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << ", " << timing
              << "): " << o.detail << std::endl;
    if (!o.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
