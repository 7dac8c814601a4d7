#pragma once

#include "bewley/axioms.hpp"
#include "bewley/characterizations.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bewley {

enum class WitnessKind {
  ct_pareto_star,      // separating hyperplane along a common-taste segment
  lemma1,              // a positively weighted prior outside the social beliefs
  spurious_unanimity,  // two positively weighted agents with distinct priors
  taste_aggregation,   // social taste outside the cone of individual tastes
};

std::string_view witness_kind_name(WitnessKind k);

/// Strict claim "x is not weakly above f" for one agent: at `prior`,
/// EU(f) - u(x) = margin > 0.
struct AgentMargin {
  std::size_t agent = 0;
  Vector prior;
  Rational margin;
};

struct WitnessCertificate {
  WitnessKind kind = WitnessKind::ct_pareto_star;
  Axiom axiom = Axiom::pareto_star;  // violated by the pair (act_x, act_f)
  Act act_f{{Vector{0}}};
  Act act_x{{Vector{0}}};
  std::optional<Hyperplane> hyperplane;  // as separated
  std::optional<Hyperplane> rescaled;    // after rescaling into the utility range
  std::optional<VertexCombo> combo;
  std::map<std::string, Rational> params;
  std::optional<Decomposition> decomposition;
  std::vector<OutcomePair> outcome_pairs;
  std::vector<AgentMargin> per_agent;
  /// min over social belief vertices of u_0(x) - EU_0(f), attained at
  /// society_prior; positive means x is strictly above f for society.
  Rational society_margin;
  Vector society_prior;
};

/// Common-Taste Pareto* violation from a vertex combo whose hull is strictly
/// separated from the social beliefs by `h`.
WitnessCertificate witness_ct_pareto_star(const Profile& prof, const VertexCombo& combo,
                                          const Hyperplane& h, const Vector& x_star,
                                          const Vector& x_low);

/// Pareto* violation from a prior p_i of a positively weighted agent i that
/// lies outside the social beliefs. Uses `pairs` (one oriented or reversible
/// c-diversity pair per agent) or computes them.
WitnessCertificate witness_lemma1(const Profile& prof, const Decomposition& dec, std::size_t i,
                                  const Vector& p_i,
                                  const std::optional<std::vector<OutcomePair>>& pairs = std::nullopt);

/// Pareto* violation from distinct priors p1 of agent i1 and p2 of agent i2,
/// both positively weighted.
WitnessCertificate witness_spurious_unanimity(
    const Profile& prof, const Decomposition& dec, std::size_t i1, std::size_t i2, const Vector& p1,
    const Vector& p2, const std::optional<std::vector<OutcomePair>>& pairs = std::nullopt);

/// Constant acts x_* and x* that every individual strictly ranks x* over
/// while society weakly prefers x_*; exists exactly when no utilitarian
/// decomposition does (given c-minimal agreement). `axiom` is the axiom to
/// report (pareto-star or ct-pareto-star).
WitnessCertificate witness_taste_aggregation(const Profile& prof, Axiom axiom);

/// The two most distant priors (squared Euclidean distance between belief
/// vertices) held by distinct positively weighted agents.
struct SpuriousChoice {
  std::size_t i1, i2;
  Vector p1, p2;
};
std::optional<SpuriousChoice> choose_spurious_pair(const Profile& prof, const Decomposition& dec);

/// Witness for a failing vertex-combo condition; empty when the condition
/// holds. Throws PreconditionError without c-minimal agreement.
std::optional<WitnessCertificate> witness_thm2(const Profile& prof, const CheckOptions& opts = {});

/// Witness for a failing dictator/common-singleton condition; empty when the
/// condition holds. Throws PreconditionError without c-diversity.
std::optional<WitnessCertificate> witness_thm1(const Profile& prof);

/// Re-evaluates every margin from the stored acts and priors and re-runs the
/// axiom check on (act_x, act_f).
bool revalidate(const Profile& prof, const WitnessCertificate& cert);

}  // namespace bewley
