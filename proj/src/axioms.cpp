#include "bewley/axioms.hpp"

#include "bewley/errors.hpp"
#include "bewley/lp.hpp"

#include <array>

namespace bewley {

namespace {

constexpr std::array<std::pair<Axiom, std::string_view>, 6> kNames{{
    {Axiom::pareto, "pareto"},
    {Axiom::pareto_star, "pareto-star"},
    {Axiom::ct_pareto, "ct-pareto"},
    {Axiom::ct_pareto_star, "ct-pareto-star"},
    {Axiom::exch_pareto, "exchange-pareto"},
    {Axiom::exch_pareto_star, "exchange-pareto-star"},
}};

const Agent& owner(const Profile& prof, std::size_t agent) {
  return agent == kSociety ? prof.require_society() : prof.agents.at(agent);
}

// The vertex of a's beliefs where EU(g) - EU(f) is largest (first on ties),
// provided that gap is strictly positive, i.e. f is not weakly above g.
std::optional<PriorCertificate> strict_reversal(const Agent& a, std::size_t index, const Act& f,
                                                const Act& g) {
  std::optional<PriorCertificate> best;
  for (const auto& v : a.beliefs.vertices()) {
    Rational gap = expected_utility(a.utility, v, g) - expected_utility(a.utility, v, f);
    if (gap > 0 && (!best || gap > best->gap)) best = PriorCertificate{index, std::nullopt, false, v, gap};
  }
  return best;
}

// Evaluates "f >=_a g" for every individual and the society, recording a
// certificate for each strict failure.
struct Rankings {
  std::vector<bool> individual;
  bool society = false;
  std::vector<PriorCertificate> certificates;
};

Rankings rank_all(const Profile& prof, const Act& f, const Act& g) {
  Rankings r;
  for (std::size_t i = 0; i < prof.size(); ++i) {
    auto cert = strict_reversal(prof.agents[i], i, f, g);
    r.individual.push_back(!cert);
    if (cert) r.certificates.push_back(std::move(*cert));
  }
  auto cert = strict_reversal(prof.require_society(), kSociety, f, g);
  r.society = !cert;
  if (cert) r.certificates.push_back(std::move(*cert));
  return r;
}

bool all_of(const std::vector<bool>& v, bool value) {
  for (bool b : v) {
    if (b != value) return false;
  }
  return true;
}

AxiomVerdict finish(Axiom a, bool premise, bool conclusion, std::vector<PriorCertificate> certs) {
  AxiomVerdict v;
  v.axiom = a;
  v.premise_holds = premise;
  v.conclusion_holds = conclusion;
  v.violation = premise && !conclusion;
  v.certificates = std::move(certs);
  return v;
}

}  // namespace

std::string_view axiom_name(Axiom a) {
  for (const auto& [tag, name] : kNames) {
    if (tag == a) return name;
  }
  return "unknown";
}

std::optional<Axiom> parse_axiom(std::string_view name) {
  for (const auto& [tag, text] : kNames) {
    if (text == name) return tag;
  }
  return std::nullopt;
}

AxiomVerdict pareto_check(const Profile& prof, const Act& f, const Act& g) {
  Rankings r = rank_all(prof, f, g);
  return finish(Axiom::pareto, all_of(r.individual, true), r.society, std::move(r.certificates));
}

AxiomVerdict pareto_star_check(const Profile& prof, const Act& f, const Act& g) {
  Rankings r = rank_all(prof, f, g);
  return finish(Axiom::pareto_star, all_of(r.individual, false), !r.society, std::move(r.certificates));
}

AxiomVerdict ct_pareto_check(const Profile& prof, const Act& f, const Act& g) {
  const bool agree = no_taste_disagreement(prof, f, g);
  AxiomVerdict v = pareto_check(prof, f, g);
  v = finish(Axiom::ct_pareto, agree && v.premise_holds, v.conclusion_holds, std::move(v.certificates));
  v.taste_agreement = agree;
  return v;
}

AxiomVerdict ct_pareto_star_check(const Profile& prof, const Act& f, const Act& g) {
  const bool agree = no_taste_disagreement(prof, f, g);
  AxiomVerdict v = pareto_star_check(prof, f, g);
  v = finish(Axiom::ct_pareto_star, agree && v.premise_holds, v.conclusion_holds, std::move(v.certificates));
  v.taste_agreement = agree;
  return v;
}

AxiomVerdict exchange_pareto_check(const Profile& prof, const Act& f, const Act& g) {
  const Agent& society = prof.require_society();
  bool premise = true;
  std::vector<PriorCertificate> certs;
  // Cross table: utility of i under every prior vertex of j.
  for (std::size_t j = 0; j < prof.size() && premise; ++j) {
    for (const auto& v : prof.agents[j].beliefs.vertices()) {
      for (std::size_t i = 0; i < prof.size(); ++i) {
        const auto& u = prof.agents[i].utility;
        Rational gap = expected_utility(u, v, g) - expected_utility(u, v, f);
        if (gap > 0) {
          premise = false;
          certs.push_back({j, i, false, v, gap});
          break;
        }
      }
      if (!premise) break;
    }
  }
  auto cert = strict_reversal(society, kSociety, f, g);
  const bool conclusion = !cert;
  if (cert) certs.push_back(std::move(*cert));
  return finish(Axiom::exch_pareto, premise, conclusion, std::move(certs));
}

AxiomVerdict exchange_pareto_star_check(const Profile& prof, const Act& f, const Act& g) {
  const Agent& society = prof.require_society();
  bool premise = true;
  std::vector<PriorCertificate> certs;
  for (std::size_t j = 0; j < prof.size() && premise; ++j) {
    const auto& verts = prof.agents[j].beliefs.vertices();
    const std::size_t k = verts.size();
    // Variables mu over P_j's vertices, then the margin t.
    LinearProgram lp(k + 1);
    for (std::size_t q = 0; q < k; ++q) lp.require_nonnegative(q);
    Vector simplex(k + 1, Rational(1));
    simplex[k] = 0;
    lp.add_constraint(std::move(simplex), Relation::eq, 1);
    for (std::size_t i = 0; i < prof.size(); ++i) {
      const auto& u = prof.agents[i].utility;
      Vector row(k + 1);
      for (std::size_t q = 0; q < k; ++q) {
        row[q] = expected_utility(u, verts[q], g) - expected_utility(u, verts[q], f);
      }
      row[k] = -1;
      lp.add_constraint(std::move(row), Relation::ge, 0);
    }
    lp.add_constraint(unit(k + 1, k), Relation::le, 1);
    lp.maximize(unit(k + 1, k));
    LpSolution sol = lp.solve();
    if (sol.status != LpStatus::optimal || sol.value <= 0) {
      premise = false;
      break;
    }
    Vector p = zeros(prof.states);
    for (std::size_t q = 0; q < k; ++q) axpy(p, sol.point[q], verts[q]);
    Rational margin = 0;
    for (std::size_t i = 0; i < prof.size(); ++i) {
      const auto& u = prof.agents[i].utility;
      Rational gap = expected_utility(u, p, g) - expected_utility(u, p, f);
      if (i == 0 || gap < margin) margin = gap;
    }
    certs.push_back({j, std::nullopt, true, std::move(p), std::move(margin)});
  }
  auto cert = strict_reversal(society, kSociety, f, g);
  const bool conclusion = static_cast<bool>(cert);
  if (cert) certs.push_back(std::move(*cert));
  return finish(Axiom::exch_pareto_star, premise, conclusion, std::move(certs));
}

AxiomVerdict check_axiom(Axiom a, const Profile& prof, const Act& f, const Act& g) {
  switch (a) {
    case Axiom::pareto: return pareto_check(prof, f, g);
    case Axiom::pareto_star: return pareto_star_check(prof, f, g);
    case Axiom::ct_pareto: return ct_pareto_check(prof, f, g);
    case Axiom::ct_pareto_star: return ct_pareto_star_check(prof, f, g);
    case Axiom::exch_pareto: return exchange_pareto_check(prof, f, g);
    case Axiom::exch_pareto_star: return exchange_pareto_star_check(prof, f, g);
  }
  throw PreconditionError("unknown axiom");
}

bool revalidate(const Profile& prof, const Act& f, const Act& g, const AxiomVerdict& v) {
  if (v.violation != (v.premise_holds && !v.conclusion_holds)) return false;
  for (const auto& c : v.certificates) {
    if (!(c.gap > 0)) return false;
    const Agent& a = owner(prof, c.agent);
    if (!is_simplex_point(c.prior) || !membership(c.prior, a.beliefs)) return false;
    if (c.all_utilities) {
      for (const auto& other : prof.agents) {
        const auto& u = other.utility;
        if (!(expected_utility(u, c.prior, g) - expected_utility(u, c.prior, f) >= c.gap)) return false;
      }
      continue;
    }
    const auto& u = c.utility ? prof.agents.at(*c.utility).utility : a.utility;
    if (expected_utility(u, c.prior, g) - expected_utility(u, c.prior, f) != c.gap) return false;
  }
  return true;
}

}  // namespace bewley
