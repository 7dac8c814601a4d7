#include "bewley/preferences.hpp"

#include "bewley/errors.hpp"
#include "bewley/lp.hpp"

#include <algorithm>

namespace bewley {

Act::Act(std::vector<Vector> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw PreconditionError("act needs at least one state");
  const std::size_t d = rows_.front().size();
  if (d == 0) throw PreconditionError("act outcomes must have positive dimension");
  for (const auto& r : rows_) {
    if (r.size() != d) throw DimensionMismatch("act rows have differing outcome dimensions");
  }
}

Act Act::constant(const Vector& x, std::size_t states) {
  return Act(std::vector<Vector>(states, x));
}

Act Act::mixture(const Rational& alpha, const Act& f, const Act& g) {
  if (f.states() != g.states()) throw DimensionMismatch("mixture: state counts differ");
  std::vector<Vector> rows;
  rows.reserve(f.states());
  for (std::size_t s = 0; s < f.states(); ++s) {
    Vector r = scaled(f[s], alpha);
    axpy(r, 1 - alpha, g[s]);
    rows.push_back(std::move(r));
  }
  return Act(std::move(rows));
}

bool Act::is_constant() const {
  return std::all_of(rows_.begin(), rows_.end(), [&](const Vector& r) { return r == rows_.front(); });
}

const Agent& Profile::require_society() const {
  if (!society) throw PreconditionError("profile has no society");
  return *society;
}

bool WeightVector::is_distribution() const {
  return !weights.empty() &&
         std::all_of(weights.begin(), weights.end(), [](const Rational& w) { return w >= 0; }) &&
         sum(weights) == 1;
}

bool WeightVector::is_nonneg_nonzero() const {
  return std::all_of(weights.begin(), weights.end(), [](const Rational& w) { return w >= 0; }) &&
         !is_zero(weights);
}

std::vector<std::size_t> WeightVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0) out.push_back(i);
  }
  return out;
}

Rational expected_utility(const AffineUtility& u, const Vector& p, const Act& f) {
  if (p.size() != f.states()) throw DimensionMismatch("expected_utility: prior and act state counts differ");
  if (u.coeffs.size() != f.outcome_dim()) {
    throw DimensionMismatch("expected_utility: utility and outcome dimensions differ");
  }
  Rational eu = 0;
  for (std::size_t s = 0; s < f.states(); ++s) {
    if (!p[s].is_zero()) eu += p[s] * u(f[s]);
  }
  return eu;
}

bool bewley_geq(const Agent& a, const Act& f, const Act& g) {
  if (f.states() != g.states() || f.outcome_dim() != g.outcome_dim()) {
    throw DimensionMismatch("bewley_geq: acts have different shapes");
  }
  // Linear in p, so the vertices decide it.
  for (const auto& v : a.beliefs.vertices()) {
    if (expected_utility(a.utility, v, f) < expected_utility(a.utility, v, g)) return false;
  }
  return true;
}

bool bewley_incomparable(const Agent& a, const Act& f, const Act& g) {
  return !bewley_geq(a, f, g) && !bewley_geq(a, g, f);
}

bool no_taste_disagreement(const Profile& prof, const Act& f, const Act& g) {
  if (f.states() != g.states() || f.outcome_dim() != g.outcome_dim()) {
    throw DimensionMismatch("no_taste_disagreement: acts have different shapes");
  }
  const Vector& base = f[0];
  Matrix diffs;
  for (const Act* act : {&f, &g}) {
    for (const auto& row : act->rows()) diffs.push_back(sub(row, base));
  }
  const Matrix span = row_basis(diffs);
  // Restriction of each utility's linear part to span(f(S) u g(S) - base).
  std::vector<Vector> restricted;
  for (const auto& agent : prof.agents) {
    if (agent.utility.coeffs.size() != base.size()) {
      throw DimensionMismatch("no_taste_disagreement: utility and outcome dimensions differ");
    }
    Vector r;
    r.reserve(span.size());
    for (const auto& b : span) r.push_back(dot(agent.utility.coeffs, b));
    restricted.push_back(std::move(r));
  }
  if (restricted.empty() || span.empty()) return true;
  if (std::all_of(restricted.begin(), restricted.end(), [](const Vector& r) { return is_zero(r); })) {
    return true;
  }
  const Vector& ref = restricted.front();
  if (is_zero(ref)) return false;
  const std::size_t k = static_cast<std::size_t>(
      std::find_if(ref.begin(), ref.end(), [](const Rational& x) { return !x.is_zero(); }) - ref.begin());
  for (const auto& r : restricted) {
    const Rational c = r[k] / ref[k];
    if (c <= 0 || r != scaled(ref, c)) return false;
  }
  return true;
}

namespace {

// Maximize t subject to c_i . delta >= t for i in `strict`, c_j . delta = 0
// for j in `indifferent`, delta in [-1, 1]^d. Returns delta when t* > 0.
std::optional<Vector> directional_witness(const Profile& prof, const std::vector<std::size_t>& strict,
                                          const std::vector<std::size_t>& indifferent) {
  const std::size_t d = prof.outcome_dim;
  LinearProgram lp(d + 1);
  for (std::size_t i : strict) {
    Vector row = prof.agents[i].utility.coeffs;
    row.push_back(-1);
    lp.add_constraint(std::move(row), Relation::ge, 0);
  }
  for (std::size_t j : indifferent) {
    Vector row = prof.agents[j].utility.coeffs;
    row.push_back(0);
    lp.add_constraint(std::move(row), Relation::eq, 0);
  }
  for (std::size_t k = 0; k < d; ++k) lp.add_bounds(k, -1, 1);
  lp.add_constraint(unit(d + 1, d), Relation::le, 1);
  lp.maximize(unit(d + 1, d));
  LpSolution sol = lp.solve();
  if (sol.status != LpStatus::optimal || sol.value <= 0) return std::nullopt;
  sol.point.pop_back();
  return max_normalized(sol.point);
}

void require_coeff_dims(const Profile& prof) {
  for (const auto& a : prof.agents) {
    if (a.utility.coeffs.size() != prof.outcome_dim) {
      throw DimensionMismatch("utility '" + a.name + "' does not match the outcome dimension");
    }
  }
}

}  // namespace

std::optional<OutcomePair> check_c_minimal_agreement(const Profile& prof) {
  require_coeff_dims(prof);
  std::vector<std::size_t> all(prof.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  auto delta = directional_witness(prof, all, {});
  if (!delta) return std::nullopt;
  return OutcomePair{*delta, zeros(prof.outcome_dim)};
}

std::optional<std::vector<OutcomePair>> check_c_diversity(const Profile& prof) {
  require_coeff_dims(prof);
  std::vector<OutcomePair> pairs;
  for (std::size_t i = 0; i < prof.size(); ++i) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < prof.size(); ++j) {
      if (j != i) others.push_back(j);
    }
    auto delta = directional_witness(prof, {i}, others);
    if (!delta) return std::nullopt;
    pairs.push_back({*delta, zeros(prof.outcome_dim)});
  }
  return pairs;
}

std::size_t coefficient_rank(const Profile& prof) {
  Matrix c;
  for (const auto& a : prof.agents) c.push_back(a.utility.coeffs);
  return rank(c);
}

namespace {

void validate_agent(const Agent& a, const std::string& who, std::size_t m, std::size_t d,
                    std::vector<std::string>& out) {
  if (a.utility.coeffs.size() != d) {
    out.push_back(who + ": utility has " + std::to_string(a.utility.coeffs.size()) +
                  " coefficients, outcome dimension is " + std::to_string(d));
  } else if (is_zero(a.utility.coeffs)) {
    out.push_back(who + ": utility is constant");
  }
  if (a.beliefs.dim() != m) {
    out.push_back(who + ": beliefs have dimension " + std::to_string(a.beliefs.dim()) +
                  ", number of states is " + std::to_string(m));
    return;
  }
  for (const auto& p : a.beliefs.generators()) {
    if (std::any_of(p.begin(), p.end(), [](const Rational& x) { return x < 0; })) {
      out.push_back(who + ": belief " + format(p) + " has a negative entry");
    } else if (sum(p) != 1) {
      out.push_back(who + ": belief " + format(p) + " sums to " + to_string(sum(p)) + ", not 1");
    }
  }
}

}  // namespace

std::vector<std::string> validate_profile(const Profile& prof) {
  std::vector<std::string> out;
  if (prof.states < 2) out.push_back("need at least two states");
  if (prof.outcome_dim < 1) out.push_back("outcome dimension must be positive");
  if (prof.agents.size() < 2) out.push_back("need at least two individuals");
  for (std::size_t i = 0; i < prof.agents.size(); ++i) {
    const auto& a = prof.agents[i];
    validate_agent(a, "agent " + std::to_string(i + 1) + (a.name.empty() ? "" : " (" + a.name + ")"),
                   prof.states, prof.outcome_dim, out);
  }
  if (prof.society) validate_agent(*prof.society, "society", prof.states, prof.outcome_dim, out);
  return out;
}

}  // namespace bewley
