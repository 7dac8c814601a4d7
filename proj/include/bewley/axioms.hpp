#pragma once

#include "bewley/preferences.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

namespace bewley {

enum class Axiom { pareto, pareto_star, ct_pareto, ct_pareto_star, exch_pareto, exch_pareto_star };

std::string_view axiom_name(Axiom a);
/// Accepts the names printed by axiom_name ("pareto-star", "ct-pareto", ...).
std::optional<Axiom> parse_axiom(std::string_view name);

inline constexpr std::size_t kSociety = std::numeric_limits<std::size_t>::max();

/// A prior under which some expected-utility comparison is strict.
///
/// `gap` is EU(g) - EU(f) computed with utility `utility` (defaults to the
/// prior owner's own) at `prior`. For Exchange Pareto* premises the gap is the
/// smallest margin over all individuals' utilities and `utility` is unset.
struct PriorCertificate {
  std::size_t agent = 0;  // prior owner; kSociety for the society
  std::optional<std::size_t> utility;
  bool all_utilities = false;
  Vector prior;
  Rational gap;
};

struct AxiomVerdict {
  Axiom axiom = Axiom::pareto;
  bool premise_holds = false;
  bool conclusion_holds = false;
  bool violation = false;
  /// Only meaningful for the common-taste axioms.
  bool taste_agreement = true;
  std::vector<PriorCertificate> certificates;
};

AxiomVerdict pareto_check(const Profile& prof, const Act& f, const Act& g);
AxiomVerdict pareto_star_check(const Profile& prof, const Act& f, const Act& g);
AxiomVerdict ct_pareto_check(const Profile& prof, const Act& f, const Act& g);
AxiomVerdict ct_pareto_star_check(const Profile& prof, const Act& f, const Act& g);
AxiomVerdict exchange_pareto_check(const Profile& prof, const Act& f, const Act& g);
AxiomVerdict exchange_pareto_star_check(const Profile& prof, const Act& f, const Act& g);

AxiomVerdict check_axiom(Axiom a, const Profile& prof, const Act& f, const Act& g);

/// Re-evaluates every certificate of `v` directly: each cited prior must
/// reproduce its gap exactly and the gap must be strictly positive.
bool revalidate(const Profile& prof, const Act& f, const Act& g, const AxiomVerdict& v);

}  // namespace bewley
