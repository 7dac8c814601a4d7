#include "bewley/characterizations.hpp"

#include "bewley/errors.hpp"
#include "bewley/lp.hpp"

#include <algorithm>
#include <array>

namespace bewley {

namespace {

constexpr std::array<std::pair<Condition, std::string_view>, 9> kNames{{
    {Condition::eq1, "eq1"},
    {Condition::thm1, "thm1"},
    {Condition::lemma1, "lemma1"},
    {Condition::eq4, "eq4"},
    {Condition::thm2, "thm2"},
    {Condition::corollary2, "corollary2"},
    {Condition::seu, "seu"},
    {Condition::prop1, "prop1"},
    {Condition::prop2, "prop2"},
}};

ConditionReport make_report(Condition c, Status s) {
  ConditionReport r;
  r.condition = c;
  r.status = s;
  return r;
}

const Polytope& owner_polytope(const Profile& prof, std::size_t owner) {
  if (owner == kSocietyOwner) return prof.require_society().beliefs;
  return prof.agents.at(owner).beliefs;
}

Polytope pooled_beliefs(const Profile& prof) {
  std::vector<Vector> all;
  for (const auto& a : prof.agents) {
    all.insert(all.end(), a.beliefs.vertices().begin(), a.beliefs.vertices().end());
  }
  return Polytope(std::move(all));
}

// Tries to place `point` in `owner`'s polytope; records either a membership
// or the separating evidence.
bool place(const Vector& point, const Polytope& P, std::size_t owner, ConditionReport& r) {
  if (auto w = hull_weights(point, P.vertices())) {
    r.memberships.push_back({point, owner, std::move(*w)});
    return true;
  }
  r.failing_points = {point};
  r.failing_owner = owner;
  r.hyperplane = separate(r.failing_points, P);
  return false;
}

std::vector<std::vector<std::size_t>> nonempty_supports(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

void require_supports_enumerable(const Profile& prof) {
  if (prof.size() >= 20) throw CapExceeded("support enumeration limited to fewer than 20 individuals");
}

Rational society_constant_gap(const Profile& prof, const WeightVector& alpha) {
  Rational beta = prof.require_society().utility.constant;
  for (std::size_t i = 0; i < prof.size(); ++i) beta -= alpha[i] * prof.agents[i].utility.constant;
  return beta;
}

}  // namespace

std::string_view condition_name(Condition c) {
  for (const auto& [tag, name] : kNames) {
    if (tag == c) return name;
  }
  return "unknown";
}

std::optional<Condition> parse_condition(std::string_view name) {
  for (const auto& [tag, text] : kNames) {
    if (text == name) return tag;
  }
  return std::nullopt;
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::holds: return "holds";
    case Status::fails: return "fails";
    case Status::precondition_unmet: return "precondition-unmet";
  }
  return "unknown";
}

std::vector<Polytope> belief_sets(const Profile& prof) {
  std::vector<Polytope> out;
  out.reserve(prof.size());
  for (const auto& a : prof.agents) out.push_back(a.beliefs);
  return out;
}

std::vector<Vector> combo_points(const std::vector<Polytope>& beliefs, const VertexCombo& combo) {
  std::vector<Vector> pts;
  pts.reserve(combo.size());
  for (std::size_t i = 0; i < combo.size(); ++i) pts.push_back(beliefs[i].vertices()[combo[i]]);
  return pts;
}

std::size_t combo_count(const std::vector<Polytope>& beliefs, std::size_t cap) {
  std::size_t count = 1;
  for (const auto& P : beliefs) {
    count *= P.vertices().size();
    if (count > cap) {
      throw CapExceeded("vertex combos exceed the cap of " + std::to_string(cap));
    }
  }
  return count;
}

std::optional<Decomposition> utilitarian_decompose(const Profile& prof,
                                                   const std::optional<std::vector<std::size_t>>& support) {
  const Agent& society = prof.require_society();
  const std::size_t n = prof.size();
  const std::size_t d = prof.outcome_dim;
  if (society.utility.coeffs.size() != d) throw DimensionMismatch("society utility dimension");
  // Variables alpha_1..alpha_n, then the margin t.
  LinearProgram lp(n + 1);
  lp.require_all_nonnegative();
  for (std::size_t k = 0; k < d; ++k) {
    Vector row = zeros(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = prof.agents[i].utility.coeffs.at(k);
    lp.add_constraint(std::move(row), Relation::eq, society.utility.coeffs[k]);
  }
  if (support) {
    std::vector<bool> inside(n, false);
    for (std::size_t i : *support) inside.at(i) = true;
    for (std::size_t i = 0; i < n; ++i) {
      Vector row = zeros(n + 1);
      row[i] = 1;
      if (inside[i]) {
        row[n] = -1;
        lp.add_constraint(std::move(row), Relation::ge, 0);
      } else {
        lp.add_constraint(std::move(row), Relation::eq, 0);
      }
    }
    lp.add_constraint(unit(n + 1, n), Relation::le, 1);
    lp.maximize(unit(n + 1, n));
  } else {
    lp.add_constraint(unit(n + 1, n), Relation::eq, 0);
    if (is_zero(society.utility.coeffs)) {
      Vector row(n + 1, Rational(1));
      row[n] = 0;
      lp.add_constraint(std::move(row), Relation::eq, 1);
    }
  }
  LpSolution sol = lp.solve();
  if (sol.status != LpStatus::optimal) return std::nullopt;
  if (support && sol.value <= 0) return std::nullopt;
  WeightVector alpha{Vector(sol.point.begin(), sol.point.begin() + static_cast<std::ptrdiff_t>(n))};
  if (!alpha.is_nonneg_nonzero()) return std::nullopt;
  return Decomposition{alpha, society_constant_gap(prof, alpha)};
}

ConditionReport check_eq1_dght1(const Profile& prof) {
  prof.require_society();
  require_supports_enumerable(prof);
  const Polytope& P0 = prof.society->beliefs;
  ConditionReport first_failure = make_report(Condition::eq1, Status::fails);
  bool any_decomposition = false;
  for (const auto& M : nonempty_supports(prof.size())) {
    auto dec = utilitarian_decompose(prof, M);
    if (!dec) continue;
    ConditionReport r = make_report(Condition::eq1, Status::holds);
    r.decomposition = dec;
    bool ok = true;
    for (const auto& w : P0.vertices()) {
      for (std::size_t i : M) {
        if (!place(w, prof.agents[i].beliefs, i, r)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return r;
    if (!any_decomposition) {
      r.status = Status::fails;
      r.note = "a vertex of the social belief set lies outside a positively weighted belief set";
      first_failure = std::move(r);
    }
    any_decomposition = true;
  }
  if (!any_decomposition) first_failure.note = "no utilitarian decomposition of the social utility";
  return first_failure;
}

ConditionReport check_thm1_condition(const Profile& prof) {
  prof.require_society();
  if (!check_c_diversity(prof)) {
    ConditionReport r = make_report(Condition::thm1, Status::precondition_unmet);
    r.note = "profile is not c-diverse";
    return r;
  }
  require_supports_enumerable(prof);
  const Polytope& P0 = prof.society->beliefs;
  ConditionReport first_failure = make_report(Condition::thm1, Status::fails);
  first_failure.note = "no utilitarian decomposition of the social utility";
  bool any_decomposition = false;
  for (const auto& M : nonempty_supports(prof.size())) {
    auto dec = utilitarian_decompose(prof, M);
    if (!dec) continue;
    // (a) one common singleton belief inside P_0.
    ConditionReport a = make_report(Condition::thm1, Status::holds);
    a.decomposition = dec;
    const auto& first = prof.agents[M.front()].beliefs;
    bool common_singleton = std::all_of(M.begin(), M.end(), [&](std::size_t i) {
      const auto& P = prof.agents[i].beliefs;
      return P.is_singleton() && P.vertices().front() == first.vertices().front();
    });
    if (common_singleton && place(first.vertices().front(), P0, kSocietyOwner, a)) {
      a.part_a = Status::holds;
      a.note = "common singleton belief inside the social belief set";
      return a;
    }
    // (b) a dictator whose beliefs lie inside P_0.
    ConditionReport b = make_report(Condition::thm1, Status::holds);
    b.decomposition = dec;
    bool dictator = M.size() == 1;
    if (dictator) {
      for (const auto& v : prof.agents[M.front()].beliefs.vertices()) {
        if (!place(v, P0, kSocietyOwner, b)) {
          dictator = false;
          break;
        }
      }
    }
    if (dictator) {
      b.part_b = Status::holds;
      b.note = "dictator " + std::to_string(M.front() + 1) + " with beliefs inside the social belief set";
      return b;
    }
    if (!any_decomposition) {
      ConditionReport& f = M.size() == 1 ? b : a;
      f.status = Status::fails;
      f.part_a = Status::fails;
      f.part_b = Status::fails;
      f.note = M.size() == 1 ? "dictator's beliefs are not inside the social belief set"
                             : "several positive weights without a common singleton belief inside the social belief set";
      first_failure = std::move(f);
    }
    any_decomposition = true;
  }
  return first_failure;
}

ConditionReport check_lemma1_superset(const Profile& prof, const Decomposition& dec) {
  const Polytope& P0 = prof.require_society().beliefs;
  if (dec.alpha.size() != prof.size()) throw DimensionMismatch("decomposition has the wrong length");
  ConditionReport r = make_report(Condition::lemma1, Status::holds);
  r.decomposition = dec;
  for (std::size_t i = 0; i < prof.size(); ++i) {
    if (dec.alpha[i] <= 0) continue;
    for (const auto& v : prof.agents[i].beliefs.vertices()) {
      if (!place(v, P0, kSocietyOwner, r)) {
        r.status = Status::fails;
        r.note = "a prior of agent " + std::to_string(i + 1) + " lies outside the social belief set";
        return r;
      }
    }
  }
  return r;
}

ConditionReport check_eq4_dght2(const Profile& prof) {
  const Polytope& P0 = prof.require_society().beliefs;
  ConditionReport r = make_report(Condition::eq4, Status::holds);
  r.decomposition = utilitarian_decompose(prof);
  if (!r.decomposition) {
    r.status = Status::fails;
    r.note = "no utilitarian decomposition of the social utility";
    return r;
  }
  const Polytope pooled = pooled_beliefs(prof);
  for (const auto& w : P0.vertices()) {
    if (!place(w, pooled, kPooledOwner, r)) {
      r.status = Status::fails;
      r.note = "a social prior lies outside the hull of the individual belief sets";
      return r;
    }
  }
  return r;
}

ConditionReport check_thm2_condition(const Profile& prof, const CheckOptions& opts) {
  const Polytope& P0 = prof.require_society().beliefs;
  if (!check_c_minimal_agreement(prof)) {
    ConditionReport r = make_report(Condition::thm2, Status::precondition_unmet);
    r.note = "profile lacks c-minimal agreement";
    return r;
  }
  ConditionReport r = make_report(Condition::thm2, Status::holds);
  r.decomposition = utilitarian_decompose(prof);
  if (!r.decomposition) {
    r.status = Status::fails;
    r.note = "no utilitarian decomposition of the social utility";
    return r;
  }
  const auto beliefs = belief_sets(prof);
  combo_count(beliefs, opts.combo_cap);
  for_each_combo(beliefs, [&](const VertexCombo& combo) {
    auto pts = combo_points(beliefs, combo);
    if (auto hit = hull_intersection(pts, P0.vertices())) {
      r.combos.push_back({combo, std::move(hit->weights_a), std::move(hit->weights_b), std::move(hit->point)});
      return true;
    }
    r.status = Status::fails;
    r.failing_combo = combo;
    r.failing_owner = kSocietyOwner;
    r.hyperplane = separate(pts, P0);
    r.failing_points = std::move(pts);
    r.note = "the hull of a vertex combo misses the social belief set";
    return false;
  });
  return r;
}

ConditionReport check_corollary2(const Profile& prof, const CheckOptions& opts) {
  const Polytope& P0 = prof.require_society().beliefs;
  ConditionReport r = make_report(Condition::corollary2, Status::holds);
  const auto beliefs = belief_sets(prof);
  r.intersection = intersect_polytopes(beliefs, opts.dimension_cap);
  r.part_a = Status::holds;
  for (const auto& v : r.intersection) {
    if (!place(v, P0, kSocietyOwner, r)) {
      r.part_a = Status::fails;
      r.note = "a point common to all belief sets lies outside the social belief set";
      break;
    }
  }
  if (r.intersection.empty()) r.note = "the individual belief sets have no common point";
  const bool common = std::all_of(beliefs.begin(), beliefs.end(),
                                  [&](const Polytope& P) { return P.same_vertices(beliefs.front()); });
  if (common && r.part_a == Status::holds) {
    // P_0 = P by mutual inclusion; the P subset P_0 half is part (a).
    r.part_b = Status::holds;
    for (const auto& w : P0.vertices()) {
      if (!place(w, beliefs.front(), 0, r)) {
        r.part_b = Status::fails;
        r.note = "the social belief set differs from the common belief set";
        break;
      }
    }
  } else if (common) {
    r.part_b = Status::fails;
  }
  const bool ok = r.part_a == Status::holds && (!r.part_b || *r.part_b == Status::holds);
  r.status = ok ? Status::holds : Status::fails;
  return r;
}

ConditionReport check_prop1(const Profile& prof) {
  ConditionReport r = check_eq4_dght2(prof);
  r.condition = Condition::prop1;
  r.note = "decided by the hull-inclusion condition" + (r.note.empty() ? "" : "; " + r.note);
  return r;
}

ConditionReport check_prop2(const Profile& prof, const CheckOptions& opts) {
  ConditionReport r = check_thm2_condition(prof, opts);
  r.condition = Condition::prop2;
  r.note = "decided by the vertex-combo condition" + (r.note.empty() ? "" : "; " + r.note);
  return r;
}

std::optional<Vector> check_seu_existence(const std::vector<Polytope>& beliefs, std::size_t combo_cap) {
  if (beliefs.size() < 2) throw PreconditionError("need at least two belief sets");
  const std::size_t m = beliefs.front().dim();
  for (const auto& P : beliefs) {
    if (P.dim() != m) throw DimensionMismatch("belief sets live over different state counts");
  }
  const std::size_t n = beliefs.size();
  const std::size_t combos = combo_count(beliefs, combo_cap);
  // Variables: p (m, free) then one gamma block of length n per combo.
  LinearProgram lp(m + combos * n);
  for (std::size_t k = m; k < m + combos * n; ++k) lp.require_nonnegative(k);
  std::size_t c = 0;
  for_each_combo(beliefs, [&](const VertexCombo& combo) {
    const std::size_t base = m + c * n;
    Vector total = zeros(m + combos * n);
    for (std::size_t i = 0; i < n; ++i) total[base + i] = 1;
    lp.add_constraint(std::move(total), Relation::eq, 1);
    const auto pts = combo_points(beliefs, combo);
    for (std::size_t s = 0; s < m; ++s) {
      Vector row = zeros(m + combos * n);
      row[s] = 1;
      for (std::size_t i = 0; i < n; ++i) row[base + i] = -pts[i][s];
      lp.add_constraint(std::move(row), Relation::eq, 0);
    }
    ++c;
    return true;
  });
  LpSolution sol = lp.solve();
  if (sol.status != LpStatus::optimal) return std::nullopt;
  return Vector(sol.point.begin(), sol.point.begin() + static_cast<std::ptrdiff_t>(m));
}

ConditionReport check_condition(Condition c, const Profile& prof, const CheckOptions& opts) {
  switch (c) {
    case Condition::eq1: return check_eq1_dght1(prof);
    case Condition::thm1: return check_thm1_condition(prof);
    case Condition::lemma1: {
      auto dec = utilitarian_decompose(prof);
      if (!dec) {
        ConditionReport r = make_report(Condition::lemma1, Status::precondition_unmet);
        r.note = "no utilitarian decomposition of the social utility";
        return r;
      }
      return check_lemma1_superset(prof, *dec);
    }
    case Condition::eq4: return check_eq4_dght2(prof);
    case Condition::thm2: return check_thm2_condition(prof, opts);
    case Condition::corollary2: return check_corollary2(prof, opts);
    case Condition::seu: {
      ConditionReport r = make_report(Condition::seu, Status::fails);
      r.seu_prior = check_seu_existence(belief_sets(prof), opts.combo_cap);
      if (r.seu_prior) {
        r.status = Status::holds;
      } else {
        r.note = "no prior lies in the hull of every vertex combo";
      }
      return r;
    }
    case Condition::prop1: return check_prop1(prof);
    case Condition::prop2: return check_prop2(prof, opts);
  }
  throw PreconditionError("unknown condition");
}

Agent aggregate_society(const Profile& prof, const WeightVector& alpha, const Rational& beta,
                        const SocietyRule& r) {
  const std::size_t n = prof.size();
  if (alpha.size() != n || !alpha.is_nonneg_nonzero()) {
    throw PreconditionError("utility weights must be nonnegative, not all zero, one per individual");
  }
  Agent society{"society", AffineUtility{zeros(prof.outcome_dim), beta}, Polytope({zeros(prof.states)})};
  for (std::size_t i = 0; i < n; ++i) {
    axpy(society.utility.coeffs, alpha[i], prof.agents[i].utility.coeffs);
    society.utility.constant += alpha[i] * prof.agents[i].utility.constant;
  }
  const auto beliefs = belief_sets(prof);
  if (const auto* mk = std::get_if<rule::Minkowski>(&r)) {
    if (mk->gamma.size() != n || !mk->gamma.is_distribution()) {
      throw PreconditionError("belief weights must form a probability vector over individuals");
    }
    std::vector<Vector> sums;
    combo_count(beliefs, kDefaultComboCap);
    for_each_combo(beliefs, [&](const VertexCombo& combo) {
      Vector p = zeros(prof.states);
      for (std::size_t i = 0; i < n; ++i) axpy(p, mk->gamma[i], beliefs[i].vertices()[combo[i]]);
      sums.push_back(std::move(p));
      return true;
    });
    society.beliefs = Polytope(std::move(sums));
  } else if (std::holds_alternative<rule::HullUnion>(r)) {
    society.beliefs = pooled_beliefs(prof);
  } else {
    const auto& given = std::get<rule::Given>(r);
    for (const auto& v : given.vertices) {
      if (v.size() != prof.states || !is_simplex_point(v)) {
        throw PreconditionError("given social prior " + format(v) + " is not a probability vector");
      }
    }
    society.beliefs = Polytope(given.vertices);
  }
  return society;
}

bool revalidate(const Profile& prof, const ConditionReport& report) {
  if (report.decomposition) {
    const auto& dec = *report.decomposition;
    if (dec.alpha.size() != prof.size() || !dec.alpha.is_nonneg_nonzero()) return false;
    const Agent& society = prof.require_society();
    Vector coeffs = zeros(prof.outcome_dim);
    Rational constant = dec.beta;
    for (std::size_t i = 0; i < prof.size(); ++i) {
      axpy(coeffs, dec.alpha[i], prof.agents[i].utility.coeffs);
      constant += dec.alpha[i] * prof.agents[i].utility.constant;
    }
    if (coeffs != society.utility.coeffs || constant != society.utility.constant) return false;
  }
  for (const auto& mem : report.memberships) {
    const Polytope P = mem.owner == kPooledOwner ? pooled_beliefs(prof) : owner_polytope(prof, mem.owner);
    const auto& verts = P.vertices();
    if (mem.weights.size() != verts.size()) return false;
    if (sum(mem.weights) != 1) return false;
    Vector p = zeros(mem.point.size());
    for (std::size_t j = 0; j < verts.size(); ++j) {
      if (mem.weights[j] < 0) return false;
      axpy(p, mem.weights[j], verts[j]);
    }
    if (p != mem.point) return false;
  }
  if (!report.combos.empty()) {
    const auto beliefs = belief_sets(prof);
    const auto& w = prof.require_society().beliefs.vertices();
    for (const auto& c : report.combos) {
      const auto pts = combo_points(beliefs, c.combo);
      Vector lhs = zeros(prof.states), rhs = zeros(prof.states);
      if (c.gamma.size() != pts.size() || c.mu.size() != w.size()) return false;
      if (sum(c.gamma) != 1 || sum(c.mu) != 1) return false;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (c.gamma[i] < 0) return false;
        axpy(lhs, c.gamma[i], pts[i]);
      }
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (c.mu[j] < 0) return false;
        axpy(rhs, c.mu[j], w[j]);
      }
      if (lhs != rhs || lhs != c.point) return false;
    }
  }
  if (report.status == Status::fails && !report.failing_points.empty()) {
    if (!report.hyperplane) return false;
    const Polytope P =
        report.failing_owner == kPooledOwner ? pooled_beliefs(prof) : owner_polytope(prof, report.failing_owner);
    if (!separates(*report.hyperplane, report.failing_points, P.vertices())) return false;
  }
  return true;
}

}  // namespace bewley
