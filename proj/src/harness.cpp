#include "bewley/harness.hpp"

#include "bewley/errors.hpp"

#include <algorithm>
#include <thread>

namespace bewley {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("random bound must be positive");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

std::int64_t SplitMix64::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (index * 0xD1B54A32D192ED03ULL));
  return SplitMix64(mix.next());
}

std::string_view society_rule_name(SocietyRuleTag r) {
  switch (r) {
    case SocietyRuleTag::none: return "none";
    case SocietyRuleTag::minkowski: return "minkowski";
    case SocietyRuleTag::hull_union: return "hull-union";
    case SocietyRuleTag::perturbed: return "perturbed";
  }
  return "unknown";
}

std::string_view sampler_name(Sampler s) {
  return s == Sampler::general ? "general" : "common-taste";
}

namespace {

// Random composition of `total` into `parts` nonnegative integers.
std::vector<std::int64_t> composition(SplitMix64& rng, std::size_t parts, std::int64_t total) {
  std::vector<std::int64_t> cuts{0, total};
  for (std::size_t k = 1; k < parts; ++k) cuts.push_back(rng.between(0, total));
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::int64_t> out;
  for (std::size_t k = 1; k < cuts.size(); ++k) out.push_back(cuts[k] - cuts[k - 1]);
  return out;
}

AffineUtility random_utility(SplitMix64& rng, std::size_t d, std::int64_t bound) {
  AffineUtility u{zeros(d), 0};
  while (is_zero(u.coeffs)) {
    for (auto& c : u.coeffs) c = rng.between(-bound, bound);
  }
  u.constant = rng.between(-bound, bound);
  return u;
}

bool meets(const Profile& prof, Hypothesis h) {
  switch (h) {
    case Hypothesis::none: return true;
    case Hypothesis::minimal_agreement: return check_c_minimal_agreement(prof).has_value();
    case Hypothesis::diversity: return check_c_diversity(prof).has_value();
  }
  return false;
}

WeightVector random_alpha(SplitMix64& rng, std::size_t n) {
  WeightVector a{zeros(n)};
  while (is_zero(a.weights)) {
    for (auto& w : a.weights) w = rng.between(0, 3);
  }
  return a;
}

void append_act(std::string& out, const Act& a) {
  for (const auto& row : a.rows()) {
    out += '[';
    for (const auto& x : row) {
      out += to_string(x);
      out += ',';
    }
    out += ']';
  }
}

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

Vector random_simplex_point(SplitMix64& rng, std::size_t m, std::int64_t den) {
  Vector p;
  for (auto part : composition(rng, m, den)) p.push_back(Rational(part, den));
  return p;
}

Polytope random_belief_set(SplitMix64& rng, std::size_t m, std::int64_t den, std::size_t lo, std::size_t hi) {
  const auto k = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
  std::vector<Vector> gens;
  for (std::size_t j = 0; j < k; ++j) gens.push_back(random_simplex_point(rng, m, den));
  return Polytope(std::move(gens));
}

WeightVector random_distribution(SplitMix64& rng, std::size_t n, std::int64_t den) {
  return WeightVector{random_simplex_point(rng, n, den)};
}

Profile random_profile(const GenParams& params) {
  if (params.n < 2 || params.m < 2 || params.d < 1 || params.max_vertices < 1 || params.denominator < 1 ||
      params.coeff_bound < 1 || params.min_vertices < 1 || params.min_vertices > params.max_vertices) {
    throw PreconditionError("invalid generator parameters");
  }
  if (params.hypothesis == Hypothesis::diversity && params.n > params.d) {
    throw PreconditionError("c-diversity needs at least as many outcome dimensions as individuals");
  }
  SplitMix64 rng(params.seed);
  Profile prof;
  prof.states = params.m;
  prof.outcome_dim = params.d;
  std::optional<Polytope> common;
  if (params.common_beliefs) {
    common = random_belief_set(rng, params.m, params.denominator, params.min_vertices, params.max_vertices);
  }
  for (std::size_t i = 0; i < params.n; ++i) {
    Polytope beliefs = common ? *common
                              : random_belief_set(rng, params.m, params.denominator, params.min_vertices,
                                                  params.max_vertices);
    prof.agents.push_back({"agent" + std::to_string(i + 1), AffineUtility{}, std::move(beliefs)});
  }
  for (int attempt = 0;; ++attempt) {
    if (attempt == 1000) throw PreconditionError("could not draw utilities meeting the requested hypothesis");
    for (auto& a : prof.agents) a.utility = random_utility(rng, params.d, params.coeff_bound);
    if (meets(prof, params.hypothesis)) break;
  }
  if (params.society_rule == SocietyRuleTag::none) return prof;

  const WeightVector alpha = random_alpha(rng, params.n);
  const Rational beta = rng.between(-params.coeff_bound, params.coeff_bound);
  switch (params.society_rule) {
    case SocietyRuleTag::minkowski:
      prof.society = aggregate_society(prof, alpha, beta,
                                       rule::Minkowski{random_distribution(rng, params.n, params.denominator)});
      break;
    case SocietyRuleTag::hull_union:
      prof.society = aggregate_society(prof, alpha, beta, rule::HullUnion{});
      break;
    case SocietyRuleTag::perturbed: {
      Polytope P0 = random_belief_set(rng, params.m, params.denominator, 1, params.max_vertices);
      prof.society = aggregate_society(prof, alpha, beta, rule::Given{P0.vertices()});
      // Occasionally a social taste unrelated to the individual ones.
      if (rng.below(4) == 0) prof.society->utility = random_utility(rng, params.d, params.coeff_bound);
      break;
    }
    case SocietyRuleTag::none: break;
  }
  return prof;
}

std::pair<Act, Act> sample_pair(SplitMix64& rng, const Profile& prof, Sampler sampler,
                                const std::optional<OutcomePair>& agreement) {
  const std::size_t m = prof.states;
  if (sampler == Sampler::common_taste && agreement) {
    constexpr std::int64_t den = 12;
    auto point = [&](std::int64_t k) {
      const Rational t(k, den);
      Vector x = scaled(agreement->high, t);
      axpy(x, 1 - t, agreement->low);
      return x;
    };
    auto segment_act = [&]() {
      std::vector<Vector> rows;
      for (std::size_t s = 0; s < m; ++s) rows.push_back(point(rng.between(0, den)));
      return Act(std::move(rows));
    };
    Act f = segment_act();
    Act g = rng.below(2) == 0 ? Act::constant(point(rng.between(0, den)), m) : segment_act();
    if (rng.below(2) == 0) std::swap(f, g);
    return {std::move(f), std::move(g)};
  }
  auto random_act = [&]() {
    std::vector<Vector> rows;
    for (std::size_t s = 0; s < m; ++s) {
      Vector row;
      for (std::size_t k = 0; k < prof.outcome_dim; ++k) row.push_back(Rational(rng.between(-10, 10), 2));
      rows.push_back(std::move(row));
    }
    return Act(std::move(rows));
  };
  Act f = random_act();
  Act g = random_act();
  return {std::move(f), std::move(g)};
}

FuzzReport fuzz_axiom(const Profile& prof, Axiom axiom, const FuzzOptions& opts) {
  prof.require_society();
  FuzzReport report;
  report.axiom = axiom;
  report.sampler = opts.sampler;
  report.seed = opts.seed;
  report.trials = opts.trials;
  report.digest = 0xCBF29CE484222325ULL;

  std::optional<OutcomePair> agreement;
  if (opts.sampler == Sampler::common_taste) {
    agreement = check_c_minimal_agreement(prof);
    if (!agreement) {
      report.warnings.push_back("no outcome pair is ranked alike by everyone; common-taste sampler falls back to general acts");
    }
  } else if (axiom == Axiom::ct_pareto || axiom == Axiom::ct_pareto_star) {
    report.warnings.push_back("general sampler rarely produces pairs without taste disagreement");
  }

  struct Trial {
    std::pair<Act, Act> pair{Act{{Vector{0}}}, Act{{Vector{0}}}};
    AxiomVerdict verdict;
  };
  std::vector<Trial> results(opts.trials);
  auto run = [&](std::size_t t) {
    Trial& out = results[t];
    if (t < opts.planted.size()) {
      out.pair = opts.planted[t];
    } else {
      SplitMix64 rng = trial_stream(opts.seed, t);
      out.pair = sample_pair(rng, prof, opts.sampler, agreement);
    }
    out.verdict = check_axiom(axiom, prof, out.pair.first, out.pair.second);
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opts.jobs, opts.trials));
  if (jobs == 1) {
    for (std::size_t t = 0; t < opts.trials; ++t) run(t);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t = w; t < opts.trials; t += jobs) run(t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (std::size_t t = 0; t < opts.trials; ++t) {
    const Trial& r = results[t];
    std::string rec = std::to_string(t) + ':' + (r.verdict.premise_holds ? '1' : '0') +
                      (r.verdict.conclusion_holds ? '1' : '0') + (r.verdict.violation ? '1' : '0') + ':';
    append_act(rec, r.pair.first);
    rec += '|';
    append_act(rec, r.pair.second);
    rec += '\n';
    report.digest = fnv1a(report.digest, rec);
    if (r.verdict.premise_holds) ++report.premise_hits;
    if (r.verdict.violation) report.violations.push_back({t, r.pair.first, r.pair.second, r.verdict});
  }
  return report;
}

CrossValidation cross_validate(const Profile& prof, Condition condition, const FuzzOptions& opts,
                               const CheckOptions& check, const ConditionChecker& checker) {
  prof.require_society();
  CrossValidation cv;
  cv.condition = condition;
  Axiom axiom;
  Sampler sampler;
  switch (condition) {
    case Condition::thm1:
      axiom = Axiom::pareto_star;
      sampler = Sampler::general;
      if (!check_c_diversity(prof)) throw PreconditionError("profile is not c-diverse");
      break;
    case Condition::thm2:
    case Condition::prop2:
      axiom = condition == Condition::thm2 ? Axiom::ct_pareto_star : Axiom::exch_pareto_star;
      sampler = Sampler::common_taste;
      if (!check_c_minimal_agreement(prof)) throw PreconditionError("profile lacks c-minimal agreement");
      break;
    default:
      throw PreconditionError("cross-validation supports thm1, thm2 and prop2");
  }
  cv.checker_status = checker ? checker(prof) : check_condition(condition, prof, check).status;
  if (cv.checker_status == Status::precondition_unmet) throw PreconditionError("condition hypotheses unmet");

  if (cv.checker_status == Status::holds) {
    FuzzOptions fo = opts;
    fo.sampler = sampler;
    cv.fuzz = fuzz_axiom(prof, axiom, fo);
    if (!cv.fuzz->violations.empty()) {
      cv.verdict = Consistency::inconsistent;
      cv.detail = "condition holds but fuzzing found " + std::to_string(cv.fuzz->violations.size()) +
                  " violation(s) of " + std::string(axiom_name(axiom)) + ", first at trial " +
                  std::to_string(cv.fuzz->violations.front().trial);
    } else {
      cv.detail = "condition holds and " + std::to_string(cv.fuzz->trials) + " fuzz trials found no violation";
    }
    return cv;
  }

  try {
    cv.witness = condition == Condition::thm1 ? witness_thm1(prof) : witness_thm2(prof, check);
  } catch (const Error& e) {
    cv.verdict = Consistency::inconsistent;
    cv.detail = std::string("condition fails but the witness construction failed: ") + e.what();
    return cv;
  }
  if (!cv.witness) {
    cv.verdict = Consistency::inconsistent;
    cv.detail = "condition reported failing but no failure could be reconstructed";
    return cv;
  }
  const bool valid = revalidate(prof, *cv.witness) &&
                     check_axiom(axiom, prof, cv.witness->act_x, cv.witness->act_f).violation;
  if (!valid) {
    cv.verdict = Consistency::inconsistent;
    cv.detail = "witness does not re-validate";
  } else {
    cv.detail = "condition fails and the " + std::string(witness_kind_name(cv.witness->kind)) +
                " witness violates " + std::string(axiom_name(axiom));
  }
  return cv;
}

}  // namespace bewley
