#pragma once

#include "bewley/axioms.hpp"
#include "bewley/characterizations.hpp"
#include "bewley/witnesses.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bewley {

/// SplitMix64: 64-bit state advanced by the golden-ratio increment
/// 0x9E3779B97F4A7C15, output mixed with multipliers 0xBF58476D1CE4E5B9 and
/// 0x94D049BB133111EB (shifts 30, 27, 31).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

/// Independent stream for trial `index` of a run seeded with `seed`.
SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t index);

enum class SocietyRuleTag { none, minkowski, hull_union, perturbed };
enum class Hypothesis { none, minimal_agreement, diversity };

std::string_view society_rule_name(SocietyRuleTag r);

struct GenParams {
  std::uint64_t seed = 1;
  std::size_t n = 2, m = 2, d = 2;
  std::size_t max_vertices = 3;
  std::int64_t denominator = 10;  // belief coordinates are multiples of 1/denominator
  std::int64_t coeff_bound = 3;   // utility coefficients are integers in [-bound, bound]
  SocietyRuleTag society_rule = SocietyRuleTag::none;
  Hypothesis hypothesis = Hypothesis::none;
  bool common_beliefs = false;  // every agent gets the same belief set
  std::size_t min_vertices = 1;
};

Profile random_profile(const GenParams& params);

/// Random point of the simplex with coordinates in (1/den) Z.
Vector random_simplex_point(SplitMix64& rng, std::size_t m, std::int64_t den);

/// Random belief set with between lo and hi generators (before redundancy removal).
Polytope random_belief_set(SplitMix64& rng, std::size_t m, std::int64_t den, std::size_t lo, std::size_t hi);

/// Random element of Delta(N) with rational entries.
WeightVector random_distribution(SplitMix64& rng, std::size_t n, std::int64_t den);

enum class Sampler { general, common_taste };

std::string_view sampler_name(Sampler s);

struct FuzzOptions {
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  Sampler sampler = Sampler::general;
  /// Pairs (f, g) used verbatim as trials 0, 1, ...
  std::vector<std::pair<Act, Act>> planted;
  std::size_t jobs = 1;
};

struct FuzzViolation {
  std::size_t trial = 0;
  Act f{{Vector{0}}};
  Act g{{Vector{0}}};
  AxiomVerdict verdict;
};

struct FuzzReport {
  Axiom axiom = Axiom::pareto;
  Sampler sampler = Sampler::general;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t premise_hits = 0;
  std::vector<FuzzViolation> violations;
  std::uint64_t digest = 0;
  std::vector<std::string> warnings;
};

/// Random act pair from the chosen sampler. The common-taste sampler places
/// every outcome on the segment between `agreement.low` and `agreement.high`.
std::pair<Act, Act> sample_pair(SplitMix64& rng, const Profile& prof, Sampler sampler,
                                const std::optional<OutcomePair>& agreement);

FuzzReport fuzz_axiom(const Profile& prof, Axiom axiom, const FuzzOptions& opts);

enum class Consistency { consistent, inconsistent };

struct CrossValidation {
  Consistency verdict = Consistency::consistent;
  Condition condition = Condition::thm2;
  Status checker_status = Status::fails;
  std::optional<FuzzReport> fuzz;
  std::optional<WitnessCertificate> witness;
  std::string detail;
};

using ConditionChecker = std::function<Status(const Profile&)>;

/// Checks a condition against its axiom: a passing condition must survive
/// fuzzing, a failing one must yield a validating witness. Supports thm1,
/// thm2 and prop2. `checker` replaces the built-in condition check.
CrossValidation cross_validate(const Profile& prof, Condition condition, const FuzzOptions& opts,
                               const CheckOptions& check = {},
                               const ConditionChecker& checker = nullptr);

}  // namespace bewley
