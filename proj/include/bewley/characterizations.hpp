#pragma once

#include "bewley/geometry.hpp"
#include "bewley/preferences.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bewley {

inline constexpr std::size_t kDefaultComboCap = 100000;

/// u_0 = sum_i alpha_i u_i + beta.
struct Decomposition {
  WeightVector alpha;
  Rational beta;
};

enum class Condition { eq1, thm1, lemma1, eq4, thm2, corollary2, seu, prop1, prop2 };

std::string_view condition_name(Condition c);
std::optional<Condition> parse_condition(std::string_view name);

enum class Status { holds, fails, precondition_unmet };

std::string_view status_name(Status s);

/// Polytope owners used in membership certificates.
inline constexpr std::size_t kSocietyOwner = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kPooledOwner = kSocietyOwner - 1;

/// point = sum_j weights_j * (vertex j of the owner's polytope).
struct Membership {
  Vector point;
  std::size_t owner = 0;
  Vector weights;
};

/// Vertex indices, one per agent, in agent order.
using VertexCombo = std::vector<std::size_t>;

/// sum_i gamma_i combo_i = point = sum_j mu_j w_j over the vertices w_j of P_0.
struct ComboCertificate {
  VertexCombo combo;
  Vector gamma;
  Vector mu;
  Vector point;
};

struct ConditionReport {
  Condition condition = Condition::eq1;
  Status status = Status::fails;
  std::optional<Decomposition> decomposition;
  std::vector<Membership> memberships;
  std::vector<ComboCertificate> combos;

  // Failure evidence: points that should lie in `failing_owner`'s polytope
  // but are strictly separated from it by `hyperplane` (points above).
  std::optional<VertexCombo> failing_combo;
  std::vector<Vector> failing_points;
  std::size_t failing_owner = kSocietyOwner;
  std::optional<Hyperplane> hyperplane;

  // Sub-verdicts for conditions with two clauses.
  std::optional<Status> part_a;
  std::optional<Status> part_b;

  std::vector<Vector> intersection;  // exact common part of the belief sets
  std::optional<Vector> seu_prior;
  std::string note;

  bool holds() const { return status == Status::holds; }
};

struct CheckOptions {
  std::size_t combo_cap = kDefaultComboCap;
  std::size_t dimension_cap = kDefaultDimensionCap;
};

/// Nonnegative nonzero alpha with sum_i alpha_i c_i = c_0. With `support`,
/// alpha is forced strictly positive on it and zero elsewhere.
std::optional<Decomposition> utilitarian_decompose(
    const Profile& prof, const std::optional<std::vector<std::size_t>>& support = std::nullopt);

ConditionReport check_eq1_dght1(const Profile& prof);
ConditionReport check_thm1_condition(const Profile& prof);
ConditionReport check_lemma1_superset(const Profile& prof, const Decomposition& dec);
ConditionReport check_eq4_dght2(const Profile& prof);
ConditionReport check_thm2_condition(const Profile& prof, const CheckOptions& opts = {});
ConditionReport check_corollary2(const Profile& prof, const CheckOptions& opts = {});
ConditionReport check_prop1(const Profile& prof);
ConditionReport check_prop2(const Profile& prof, const CheckOptions& opts = {});

/// A prior lying in conv(c) for every vertex combo c of the belief sets.
std::optional<Vector> check_seu_existence(const std::vector<Polytope>& beliefs,
                                          std::size_t combo_cap = kDefaultComboCap);

ConditionReport check_condition(Condition c, const Profile& prof, const CheckOptions& opts = {});

/// Number of vertex combos, throwing CapExceeded above `cap`.
std::size_t combo_count(const std::vector<Polytope>& beliefs, std::size_t cap);

/// Calls `visit(combo)` for each vertex combo in lexicographic order; stops
/// early when `visit` returns false.
template <class Visit>
void for_each_combo(const std::vector<Polytope>& beliefs, Visit&& visit) {
  VertexCombo combo(beliefs.size(), 0);
  while (true) {
    if (!visit(static_cast<const VertexCombo&>(combo))) return;
    std::size_t k = beliefs.size();
    while (k > 0) {
      --k;
      if (++combo[k] < beliefs[k].vertices().size()) break;
      combo[k] = 0;
      if (k == 0) return;
    }
    if (beliefs.empty()) return;
  }
}

std::vector<Vector> combo_points(const std::vector<Polytope>& beliefs, const VertexCombo& combo);

std::vector<Polytope> belief_sets(const Profile& prof);

namespace rule {
struct Minkowski {
  WeightVector gamma;
};
struct HullUnion {};
struct Given {
  std::vector<Vector> vertices;
};
}  // namespace rule
using SocietyRule = std::variant<rule::Minkowski, rule::HullUnion, rule::Given>;

/// Society with u_0 = sum_i alpha_i u_i + beta and beliefs built by `r`.
Agent aggregate_society(const Profile& prof, const WeightVector& alpha, const Rational& beta,
                        const SocietyRule& r);

/// Re-checks a report's certificates by direct evaluation.
bool revalidate(const Profile& prof, const ConditionReport& report);

}  // namespace bewley
