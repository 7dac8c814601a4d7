#include "bewley/witnesses.hpp"

#include "bewley/errors.hpp"
#include "bewley/lp.hpp"

#include <algorithm>

namespace bewley {

namespace {

// Outcome sum_j (1/n) (w_j x^{j*} + (1 - w_j) x_{j*}).
Vector blend(const std::vector<OutcomePair>& pairs, const Vector& w) {
  const Rational inv_n = Rational(1, static_cast<long>(pairs.size()));
  Vector out = zeros(pairs.front().high.size());
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    axpy(out, inv_n * w[j], pairs[j].high);
    axpy(out, inv_n * (1 - w[j]), pairs[j].low);
  }
  return out;
}

std::vector<OutcomePair> oriented_pairs(const Profile& prof, const std::optional<std::vector<OutcomePair>>& given) {
  std::vector<OutcomePair> pairs;
  if (given) {
    pairs = *given;
  } else {
    auto found = check_c_diversity(prof);
    if (!found) throw PreconditionError("profile is not c-diverse");
    pairs = std::move(*found);
  }
  if (pairs.size() != prof.size()) throw PreconditionError("need one outcome pair per individual");
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const auto& u = prof.agents[j].utility;
    if (u(pairs[j].high) < u(pairs[j].low)) std::swap(pairs[j].high, pairs[j].low);
    if (u(pairs[j].high) == u(pairs[j].low)) {
      throw PreconditionError("outcome pair " + std::to_string(j + 1) + " is not strictly ranked by its agent");
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto& v = prof.agents[k].utility;
      if (k != j && v(pairs[j].high) != v(pairs[j].low)) {
        throw PreconditionError("outcome pair " + std::to_string(j + 1) + " is not neutral for agent " +
                                std::to_string(k + 1));
      }
    }
  }
  return pairs;
}

void require_decomposition(const Profile& prof, const Decomposition& dec) {
  if (dec.alpha.size() != prof.size() || !dec.alpha.is_nonneg_nonzero()) {
    throw PreconditionError("decomposition weights must be nonnegative, nonzero, one per individual");
  }
}

// Fills per-agent margins at the vertex maximizing EU(f) - u(x) (unless a
// prior is pinned for that agent) and the social margin at its worst vertex.
void certify(const Profile& prof, WitnessCertificate& c, const std::vector<std::optional<Vector>>& pinned) {
  c.per_agent.clear();
  for (std::size_t i = 0; i < prof.size(); ++i) {
    const Agent& a = prof.agents[i];
    const Rational ux = a.utility(c.act_x[0]);
    AgentMargin best{i, {}, 0};
    if (i < pinned.size() && pinned[i]) {
      best.prior = *pinned[i];
      best.margin = expected_utility(a.utility, best.prior, c.act_f) - ux;
    } else {
      bool first = true;
      for (const auto& v : a.beliefs.vertices()) {
        Rational m = expected_utility(a.utility, v, c.act_f) - ux;
        if (first || m > best.margin) {
          best.prior = v;
          best.margin = m;
          first = false;
        }
      }
    }
    if (!(best.margin > 0)) {
      throw Error("construction failed: agent " + std::to_string(i + 1) + " margin is not positive");
    }
    c.per_agent.push_back(std::move(best));
  }
  const Agent& society = prof.require_society();
  const Rational ux = society.utility(c.act_x[0]);
  bool first = true;
  for (const auto& w : society.beliefs.vertices()) {
    Rational m = ux - expected_utility(society.utility, w, c.act_f);
    if (first || m < c.society_margin) {
      c.society_margin = m;
      c.society_prior = w;
      first = false;
    }
  }
}

// Affine map sending [lo, hi] onto [L, H].
struct Rescale {
  Rational lo, hi, L, H;
  Rational operator()(const Rational& v) const { return L + (v - lo) * (H - L) / (hi - lo); }
};

Rescale range_of(const Hyperplane& h, Rational L, Rational H) {
  Rational lo = h.threshold, hi = h.threshold;
  for (const auto& l : h.normal) {
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  if (lo == hi) throw PreconditionError("hyperplane normal is constant and separates nothing");
  return {lo, hi, std::move(L), std::move(H)};
}

Hyperplane apply(const Rescale& r, const Hyperplane& h) {
  Hyperplane out{{}, r(h.threshold)};
  for (const auto& l : h.normal) out.normal.push_back(r(l));
  return out;
}

}  // namespace

std::string_view witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::ct_pareto_star: return "ct-pareto-star";
    case WitnessKind::lemma1: return "lemma1";
    case WitnessKind::spurious_unanimity: return "spurious-unanimity";
    case WitnessKind::taste_aggregation: return "taste-aggregation";
  }
  return "unknown";
}

WitnessCertificate witness_ct_pareto_star(const Profile& prof, const VertexCombo& combo, const Hyperplane& h,
                                          const Vector& x_star, const Vector& x_low) {
  const Agent& society = prof.require_society();
  const auto beliefs = belief_sets(prof);
  if (combo.size() != prof.size()) throw PreconditionError("combo needs one vertex per individual");
  for (std::size_t i = 0; i < combo.size(); ++i) {
    if (combo[i] >= beliefs[i].vertices().size()) throw PreconditionError("combo vertex index out of range");
  }
  const auto pts = combo_points(beliefs, combo);
  if (h.normal.size() != prof.states || !separates(h, pts, society.beliefs.vertices())) {
    throw PreconditionError("hyperplane does not separate the combo from the social beliefs");
  }
  if (x_star.size() != prof.outcome_dim || x_low.size() != prof.outcome_dim) {
    throw DimensionMismatch("outcome pair dimension");
  }
  for (const auto& a : prof.agents) {
    if (!(a.utility(x_star) > a.utility(x_low))) {
      throw PreconditionError("outcome pair is not strictly ranked the same way by every individual");
    }
  }

  WitnessCertificate c;
  c.kind = WitnessKind::ct_pareto_star;
  c.axiom = Axiom::ct_pareto_star;
  c.hyperplane = h;
  c.combo = combo;
  c.outcome_pairs = {{x_star, x_low}};
  bool inside = h.threshold >= 0 && h.threshold <= 1 &&
                std::all_of(h.normal.begin(), h.normal.end(), [](const Rational& l) { return l >= 0 && l <= 1; });
  Hyperplane hp = inside ? h : apply(range_of(h, 0, 1), h);
  c.rescaled = hp;

  auto along = [&](const Rational& t) {
    Vector out = scaled(x_star, t);
    axpy(out, 1 - t, x_low);
    return out;
  };
  std::vector<Vector> rows;
  for (const auto& l : hp.normal) rows.push_back(along(l));
  c.act_f = Act(std::move(rows));
  c.act_x = Act::constant(along(hp.threshold), prof.states);
  c.params["kappa"] = hp.threshold;
  std::vector<std::optional<Vector>> pinned(pts.begin(), pts.end());
  certify(prof, c, pinned);
  if (!(c.society_margin > 0)) throw Error("construction failed: society does not rank x above f");
  c.decomposition = utilitarian_decompose(prof);
  return c;
}

WitnessCertificate witness_lemma1(const Profile& prof, const Decomposition& dec, std::size_t i, const Vector& p_i,
                                  const std::optional<std::vector<OutcomePair>>& given) {
  const Agent& society = prof.require_society();
  require_decomposition(prof, dec);
  if (i >= prof.size() || dec.alpha[i] <= 0) throw PreconditionError("agent must carry positive weight");
  if (p_i.size() != prof.states || !membership(p_i, prof.agents[i].beliefs)) {
    throw PreconditionError("prior is not in the agent's belief set");
  }
  const std::vector<Vector> above{p_i};
  auto h = separate(above, society.beliefs);
  if (!h) throw PreconditionError("prior lies inside the social belief set; nothing to separate");
  const auto pairs = oriented_pairs(prof, given);
  const std::size_t n = prof.size();
  const Rational inv_n = Rational(1, static_cast<long>(n));
  const auto& ui = prof.agents[i].utility;

  // u_i ranges over [L, H] on agent i's scaled segment shifted by the others'.
  Rational L = ui(pairs[i].low);
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) L += ui(pairs[j].high);
  }
  L *= inv_n;
  const Rational delta_i = ui(pairs[i].high) - ui(pairs[i].low);
  const Rational H = L + delta_i * inv_n;
  const Rescale r = range_of(*h, L, H);
  const Hyperplane hp = apply(r, *h);

  // Binding bound on epsilon from the social inequality.
  Rational gap;
  bool first = true;
  for (const auto& w : society.beliefs.vertices()) {
    Rational g = hp.threshold - dot(w, hp.normal);
    if (first || g < gap) gap = g;
    first = false;
  }
  Rational slack = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const auto& uj = prof.agents[j].utility;
    slack += dec.alpha[j] * 2 * inv_n * (uj(pairs[j].high) - uj(pairs[j].low));
  }
  Rational bound = Rational(1, 2);
  if (slack > 0) bound = std::min(bound, dec.alpha[i] * gap / slack);
  const Rational eps = bound / 2;

  auto theta = [&](const Rational& v) { return (v - L) / (H - L); };
  auto outcome = [&](const Rational& own, const Rational& other) {
    Vector w(n, other);
    w[i] = own;
    return blend(pairs, w);
  };
  std::vector<Vector> rows;
  for (const auto& l : hp.normal) rows.push_back(outcome(theta(l), Rational(1, 2) + eps));

  WitnessCertificate c;
  c.kind = WitnessKind::lemma1;
  c.axiom = Axiom::pareto_star;
  c.act_f = Act(std::move(rows));
  c.act_x = Act::constant(outcome(theta(hp.threshold), Rational(1, 2) - eps), prof.states);
  c.hyperplane = *h;
  c.rescaled = hp;
  c.decomposition = dec;
  c.outcome_pairs = pairs;
  c.params["epsilon"] = eps;
  c.params["kappa"] = hp.threshold;
  c.params["interval_low"] = L;
  c.params["interval_high"] = H;
  std::vector<std::optional<Vector>> pinned(n);
  pinned[i] = p_i;
  certify(prof, c, pinned);
  if (!(c.society_margin > 0)) throw Error("construction failed: society does not rank x above f");
  return c;
}

WitnessCertificate witness_spurious_unanimity(const Profile& prof, const Decomposition& dec, std::size_t i1,
                                              std::size_t i2, const Vector& p1, const Vector& p2,
                                              const std::optional<std::vector<OutcomePair>>& given) {
  prof.require_society();
  require_decomposition(prof, dec);
  const std::size_t n = prof.size();
  if (i1 >= n || i2 >= n || i1 == i2) throw PreconditionError("need two distinct individuals");
  if (dec.alpha[i1] <= 0 || dec.alpha[i2] <= 0) throw PreconditionError("both individuals must carry positive weight");
  if (p1 == p2) throw PreconditionError("the two priors must differ");
  if (p1.size() != prof.states || !membership(p1, prof.agents[i1].beliefs) ||
      p2.size() != prof.states || !membership(p2, prof.agents[i2].beliefs)) {
    throw PreconditionError("priors must belong to the respective belief sets");
  }
  const auto pairs = oriented_pairs(prof, given);
  const Rational inv_n = Rational(1, static_cast<long>(n));
  const Rational& a1 = dec.alpha[i1];
  const Rational& a2 = dec.alpha[i2];
  const std::size_t m = prof.states;

  Rational dist2 = 0;
  for (std::size_t s = 0; s < m; ++s) dist2 += (p2[s] - p1[s]) * (p2[s] - p1[s]);
  const Rational eps = Rational(1, 2) * (Rational(1, 2) * std::min(a1, a2) * dist2);

  // phi_1 and phi_2 of the degenerate distribution on s.
  auto phi = [&](bool first, std::size_t s) {
    const Rational& weight = first ? a2 : a1;
    Rational total = 0;
    for (std::size_t t = 0; t < m; ++t) {
      const Rational diff = first ? p1[t] - p2[t] : p2[t] - p1[t];
      const Rational at = (t == s ? Rational(1) : Rational(0)) - (p1[t] + p2[t]) / 2;
      total += diff * at;
    }
    return weight * total - eps;
  };
  Vector phi1(m), phi2(m);
  for (std::size_t s = 0; s < m; ++s) {
    phi1[s] = phi(true, s);
    phi2[s] = phi(false, s);
  }
  const Rational d1 = prof.agents[i1].utility(pairs[i1].high) - prof.agents[i1].utility(pairs[i1].low);
  const Rational d2 = prof.agents[i2].utility(pairs[i2].high) - prof.agents[i2].utility(pairs[i2].low);

  // Keep b phi_k(delta_s) within half the width of agent k's interval.
  std::optional<Rational> b_max;
  auto limit = [&](const Rational& ph, const Rational& delta) {
    if (ph == 0) return;
    Rational cap = delta / (2 * static_cast<long>(n) * abs(ph));
    if (!b_max || cap < *b_max) b_max = cap;
  };
  for (std::size_t s = 0; s < m; ++s) {
    limit(phi1[s], d1);
    limit(phi2[s], d2);
  }
  if (!b_max) throw Error("construction failed: both phi functions vanish on every state");
  const Rational b = *b_max / 2;

  Rational others = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == i1 || k == i2) continue;
    const auto& uk = prof.agents[k].utility;
    others += dec.alpha[k] * 2 * inv_n * (uk(pairs[k].high) - uk(pairs[k].low));
  }
  const Rational gain = b * (a1 + a2) * eps;
  Rational nu_bound = Rational(1, 2);
  if (others > 0) nu_bound = std::min(nu_bound, gain / others);
  const Rational nu = nu_bound / 2;

  Vector base(n, Rational(1, 2) - nu);
  base[i1] = Rational(1, 2);
  base[i2] = Rational(1, 2);
  const Vector x_hat = blend(pairs, base);
  std::vector<Vector> rows;
  for (std::size_t s = 0; s < m; ++s) {
    Vector w(n, Rational(1, 2) + nu);
    w[i1] = Rational(1, 2) + static_cast<long>(n) * b * phi1[s] / d1;
    w[i2] = Rational(1, 2) + static_cast<long>(n) * b * phi2[s] / d2;
    rows.push_back(blend(pairs, w));
  }

  WitnessCertificate c;
  c.kind = WitnessKind::spurious_unanimity;
  c.axiom = Axiom::pareto_star;
  c.act_f = Act(std::move(rows));
  c.act_x = Act::constant(x_hat, m);
  c.decomposition = dec;
  c.outcome_pairs = pairs;
  c.params["epsilon"] = eps;
  c.params["b"] = b;
  c.params["nu"] = nu;
  c.params["phi1_at_p1"] = a2 / 2 * dist2 - eps;
  c.params["phi2_at_p2"] = a1 / 2 * dist2 - eps;
  c.params["society_gap"] = gain - nu * others;
  std::vector<std::optional<Vector>> pinned(n);
  pinned[i1] = p1;
  pinned[i2] = p2;
  certify(prof, c, pinned);
  if (!(c.society_margin > 0)) throw Error("construction failed: society does not rank x above f");
  return c;
}

WitnessCertificate witness_taste_aggregation(const Profile& prof, Axiom axiom) {
  const Agent& society = prof.require_society();
  const std::size_t d = prof.outcome_dim;
  // Maximize t: c_i . delta >= t for all i, c_0 . delta <= -t, delta in [-1, 1]^d.
  LinearProgram lp(d + 1);
  for (const auto& a : prof.agents) {
    Vector row = a.utility.coeffs;
    row.push_back(-1);
    lp.add_constraint(std::move(row), Relation::ge, 0);
  }
  Vector row = society.utility.coeffs;
  row.push_back(1);
  lp.add_constraint(std::move(row), Relation::le, 0);
  for (std::size_t k = 0; k < d; ++k) lp.add_bounds(k, -1, 1);
  lp.add_constraint(unit(d + 1, d), Relation::le, 1);
  lp.maximize(unit(d + 1, d));
  LpSolution sol = lp.solve();
  if (sol.status != LpStatus::optimal || sol.value <= 0) {
    throw PreconditionError("social taste is a nonnegative combination of individual tastes");
  }
  sol.point.pop_back();
  const Vector high = max_normalized(sol.point);
  const Vector low = zeros(d);

  WitnessCertificate c;
  c.kind = WitnessKind::taste_aggregation;
  c.axiom = axiom;
  c.act_f = Act::constant(high, prof.states);
  c.act_x = Act::constant(low, prof.states);
  c.outcome_pairs = {{high, low}};
  certify(prof, c, {});
  return c;
}

std::optional<SpuriousChoice> choose_spurious_pair(const Profile& prof, const Decomposition& dec) {
  std::optional<SpuriousChoice> best;
  Rational best_dist = 0;
  for (std::size_t a = 0; a < prof.size(); ++a) {
    if (dec.alpha[a] <= 0) continue;
    for (std::size_t b = a + 1; b < prof.size(); ++b) {
      if (dec.alpha[b] <= 0) continue;
      for (const auto& p1 : prof.agents[a].beliefs.vertices()) {
        for (const auto& p2 : prof.agents[b].beliefs.vertices()) {
          Rational dist = 0;
          for (std::size_t s = 0; s < p1.size(); ++s) dist += (p1[s] - p2[s]) * (p1[s] - p2[s]);
          if (dist > best_dist) {
            best_dist = dist;
            best = SpuriousChoice{a, b, p1, p2};
          }
        }
      }
    }
  }
  return best;
}

std::optional<WitnessCertificate> witness_thm2(const Profile& prof, const CheckOptions& opts) {
  const ConditionReport r = check_thm2_condition(prof, opts);
  if (r.status == Status::precondition_unmet) throw PreconditionError(r.note);
  if (r.holds()) return std::nullopt;
  if (!r.decomposition) return witness_taste_aggregation(prof, Axiom::ct_pareto_star);
  const auto agreement = check_c_minimal_agreement(prof);
  return witness_ct_pareto_star(prof, *r.failing_combo, *r.hyperplane, agreement->high, agreement->low);
}

std::optional<WitnessCertificate> witness_thm1(const Profile& prof) {
  const ConditionReport r = check_thm1_condition(prof);
  if (r.status == Status::precondition_unmet) throw PreconditionError(r.note);
  if (r.holds()) return std::nullopt;
  const auto dec = utilitarian_decompose(prof);
  if (!dec) return witness_taste_aggregation(prof, Axiom::pareto_star);
  const Polytope& P0 = prof.society->beliefs;
  for (std::size_t i = 0; i < prof.size(); ++i) {
    if (dec->alpha[i] <= 0) continue;
    for (const auto& v : prof.agents[i].beliefs.vertices()) {
      if (!membership(v, P0)) return witness_lemma1(prof, *dec, i, v);
    }
  }
  auto choice = choose_spurious_pair(prof, *dec);
  if (!choice) throw Error("condition fails but no witness construction applies");
  return witness_spurious_unanimity(prof, *dec, choice->i1, choice->i2, choice->p1, choice->p2);
}

bool revalidate(const Profile& prof, const WitnessCertificate& cert) {
  const Agent& society = prof.require_society();
  if (!cert.act_x.is_constant()) return false;
  if (cert.act_f.states() != prof.states || cert.act_x.states() != prof.states) return false;
  if (cert.per_agent.size() != prof.size()) return false;
  for (std::size_t i = 0; i < prof.size(); ++i) {
    const auto& am = cert.per_agent[i];
    const Agent& a = prof.agents[i];
    if (am.agent != i || !(am.margin > 0)) return false;
    if (!is_simplex_point(am.prior) || !membership(am.prior, a.beliefs)) return false;
    if (expected_utility(a.utility, am.prior, cert.act_f) - a.utility(cert.act_x[0]) != am.margin) return false;
  }
  if (!(cert.society_margin > 0)) return false;
  const Rational ux = society.utility(cert.act_x[0]);
  bool attained = false;
  for (const auto& w : society.beliefs.vertices()) {
    const Rational m = ux - expected_utility(society.utility, w, cert.act_f);
    if (m < cert.society_margin) return false;
    if (m == cert.society_margin && w == cert.society_prior) attained = true;
  }
  if (!attained) return false;
  if (cert.hyperplane && cert.combo) {
    const auto pts = combo_points(belief_sets(prof), *cert.combo);
    if (!separates(*cert.hyperplane, pts, society.beliefs.vertices())) return false;
  }
  if (cert.kind == WitnessKind::ct_pareto_star && !no_taste_disagreement(prof, cert.act_f, cert.act_x)) {
    return false;
  }
  return check_axiom(cert.axiom, prof, cert.act_x, cert.act_f).violation;
}

}  // namespace bewley
