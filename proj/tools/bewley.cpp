// Command-line front end: check, witness, plot-data, fuzz, cross-validate.
//
// Exit codes: 0 holds / no violation / consistent, 1 fails / violation /
// inconsistent, 2 precondition unmet or nothing to witness, 3 input error,
// 4 internal error.

#include "bewley/document.hpp"
#include "bewley/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace bewley;

namespace {

enum Exit { kOk = 0, kFail = 1, kUnmet = 2, kInput = 3, kInternal = 4 };

struct Common {
  std::string profile;
  std::string out;
  std::string format = "human";
  std::size_t combo_cap = kDefaultComboCap;
};

std::filesystem::path output_path(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("BEWLEY_OUTPUT_DIR"); dir && *dir) return std::filesystem::path(dir) / p;
  }
  return p;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  const auto path = output_path(out);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f << text;
}

std::string agent_label(const Profile& prof, std::size_t i) {
  if (i == kSociety || i == kSocietyOwner) return "society";
  if (i == kPooledOwner) return "pooled individual beliefs";
  const auto& name = prof.agents.at(i).name;
  return name.empty() ? "agent " + std::to_string(i + 1) : name;
}

std::string human(const Profile& prof, const AxiomVerdict& v) {
  std::ostringstream s;
  s << axiom_name(v.axiom) << ": premise " << (v.premise_holds ? "holds" : "fails") << ", conclusion "
    << (v.conclusion_holds ? "holds" : "fails") << (v.violation ? " -> VIOLATION" : " -> no violation") << "\n";
  if (v.axiom == Axiom::ct_pareto || v.axiom == Axiom::ct_pareto_star) {
    s << "  taste agreement: " << (v.taste_agreement ? "yes" : "no (axiom vacuous)") << "\n";
  }
  for (const auto& c : v.certificates) {
    s << "  " << agent_label(prof, c.agent) << " prior " << format(c.prior) << ": EU(g) - EU(f) = " << to_string(c.gap);
    if (c.utility) s << " (utility of " << agent_label(prof, *c.utility) << ")";
    if (c.all_utilities) s << " (smallest over all utilities)";
    s << "\n";
  }
  return s.str();
}

std::string human(const Profile& prof, const ConditionReport& r) {
  std::ostringstream s;
  s << condition_name(r.condition) << ": " << status_name(r.status) << "\n";
  if (!r.note.empty()) s << "  " << r.note << "\n";
  if (r.decomposition) {
    s << "  weights " << format(r.decomposition->alpha.weights) << ", constant " << to_string(r.decomposition->beta)
      << "\n";
  }
  if (r.part_a) s << "  part (a): " << status_name(*r.part_a) << "\n";
  if (r.part_b) s << "  part (b): " << status_name(*r.part_b) << "\n";
  if (r.seu_prior) s << "  common prior " << format(*r.seu_prior) << "\n";
  if (r.condition == Condition::corollary2) {
    s << "  intersection vertices:";
    for (const auto& v : r.intersection) s << " " << format(v);
    s << "\n";
  }
  if (r.status == Status::fails && !r.failing_points.empty()) {
    s << "  outside " << agent_label(prof, r.failing_owner) << ":";
    for (const auto& p : r.failing_points) s << " " << format(p);
    s << "\n";
    if (r.failing_combo) {
      s << "  failing combo (vertex numbers):";
      for (auto k : *r.failing_combo) s << " " << k + 1;
      s << "\n";
    }
    if (r.hyperplane) {
      s << "  separating hyperplane normal " << format(r.hyperplane->normal) << ", threshold "
        << to_string(r.hyperplane->threshold) << "\n";
    }
  }
  return s.str();
}

std::string human(const FuzzReport& r) {
  std::ostringstream s;
  s << axiom_name(r.axiom) << " fuzz (" << sampler_name(r.sampler) << ", seed " << r.seed << "): " << r.trials
    << " trials, " << r.premise_hits << " premise hits, " << r.violations.size() << " violations, digest "
    << hex_digest(r.digest) << "\n";
  for (const auto& w : r.warnings) s << "  warning: " << w << "\n";
  for (const auto& v : r.violations) s << "  violation at trial " << v.trial << "\n";
  return s.str();
}

std::string render(const Common& c, const Json& j, const std::string& text) {
  if (c.format == "machine") return j.dump(2) + "\n";
  return text;
}

std::pair<Act, Act> pick_pair(const ProfileDocument& doc, const std::string& acts_path) {
  if (!acts_path.empty()) {
    ActsDocument acts = load_acts(acts_path);
    if (!acts.pair) {
      if (acts.acts.size() != 2) throw InputError("acts document needs a 'pair' entry");
      acts.pair = std::make_pair(std::size_t{0}, std::size_t{1});
    }
    const Act& f = acts.acts[acts.pair->first].second;
    const Act& g = acts.acts[acts.pair->second].second;
    for (const Act* a : {&f, &g}) {
      if (a->states() != doc.profile.states || a->outcome_dim() != doc.profile.outcome_dim) {
        throw InputError("acts do not match the profile's states and outcome dimension");
      }
    }
    return {f, g};
  }
  if (!doc.planted.empty()) return doc.planted.front();
  throw InputError("axiom checks need --acts or a planted pair in the profile");
}

int cmd_check(const Common& c, const std::string& what, const std::string& acts_path) {
  const ProfileDocument doc = load_profile(c.profile);
  const Profile& prof = doc.profile;
  if (auto ax = parse_axiom(what)) {
    const auto [f, g] = pick_pair(doc, acts_path);
    const AxiomVerdict v = check_axiom(*ax, prof, f, g);
    emit(c.out, render(c, to_json(v), human(prof, v)));
    return v.violation ? kFail : kOk;
  }
  if (auto cond = parse_condition(what)) {
    CheckOptions opts;
    opts.combo_cap = c.combo_cap;
    const ConditionReport r = check_condition(*cond, prof, opts);
    emit(c.out, render(c, to_json(r), human(prof, r)));
    switch (r.status) {
      case Status::holds: return kOk;
      case Status::fails: return kFail;
      case Status::precondition_unmet: return kUnmet;
    }
  }
  throw InputError("unknown axiom or condition '" + what + "'");
}

int cmd_witness(const Common& c, const std::string& kind, const std::vector<std::size_t>& agents) {
  const Profile prof = load_profile(c.profile).profile;
  CheckOptions opts;
  opts.combo_cap = c.combo_cap;
  std::optional<WitnessCertificate> cert;
  if (kind == "ct-pareto-star" || kind == "thm2") {
    cert = witness_thm2(prof, opts);
  } else if (kind == "thm1") {
    cert = witness_thm1(prof);
  } else if (kind == "lemma1" || kind == "spurious-unanimity") {
    if (!check_c_diversity(prof)) throw PreconditionError("profile is not c-diverse");
    const auto dec = utilitarian_decompose(prof);
    if (!dec) throw PreconditionError("no utilitarian decomposition of the social utility");
    if (kind == "lemma1") {
      for (std::size_t i = 0; i < prof.size() && !cert; ++i) {
        if (dec->alpha[i] <= 0) continue;
        for (const auto& v : prof.agents[i].beliefs.vertices()) {
          if (!membership(v, prof.society->beliefs)) {
            cert = witness_lemma1(prof, *dec, i, v);
            break;
          }
        }
      }
    } else {
      Decomposition restricted = *dec;
      if (!agents.empty()) {
        if (agents.size() != 2) throw InputError("--agents takes exactly two agent numbers");
        for (std::size_t i = 0; i < prof.size(); ++i) {
          if (i + 1 != agents[0] && i + 1 != agents[1]) restricted.alpha.weights[i] = 0;
        }
      }
      if (auto choice = choose_spurious_pair(prof, restricted)) {
        cert = witness_spurious_unanimity(prof, *dec, choice->i1, choice->i2, choice->p1, choice->p2);
      }
    }
  } else {
    throw InputError("unknown witness kind '" + kind + "'");
  }
  if (!cert) {
    std::cerr << "nothing to witness: the condition holds for this profile\n";
    return kUnmet;
  }
  if (!revalidate(prof, *cert)) throw Error("constructed witness failed re-validation");
  emit(c.out, to_json(*cert).dump(2) + "\n");
  if (!c.out.empty()) {
    std::cout << witness_kind_name(cert->kind) << " witness written; society margin "
              << to_string(cert->society_margin) << "\n";
  }
  return kOk;
}

int cmd_plot(const Common& c, const std::string& acts_path, std::size_t grid, int precision) {
  const Profile prof = load_profile(c.profile).profile;
  if (prof.states != 2) {
    std::cerr << "plot data needs exactly two states\n";
    return kUnmet;
  }
  if (grid < 2) throw InputError("--grid must be at least 2");
  const ActsDocument acts = load_acts(acts_path);
  std::vector<const Agent*> who;
  for (const auto& a : prof.agents) who.push_back(&a);
  if (prof.society) who.push_back(&*prof.society);

  std::ostringstream s;
  s << "p_A,kind";
  for (const auto& [name, act] : acts.acts) {
    if (act.states() != 2 || act.outcome_dim() != prof.outcome_dim) {
      throw InputError("act '" + name + "' does not match the profile");
    }
    for (const Agent* a : who) s << "," << name << "/" << a->name;
  }
  s << "\n";
  auto row = [&](const Rational& pa, const std::string& kind) {
    const Vector p{pa, 1 - pa};
    s << to_decimal(pa, precision) << "," << kind;
    for (const auto& entry : acts.acts) {
      for (const Agent* a : who) s << "," << to_decimal(expected_utility(a->utility, p, entry.second), precision);
    }
    s << "\n";
  };
  const long steps = static_cast<long>(grid) - 1;
  for (long k = 0; k <= steps; ++k) row(Rational(k, steps), "grid");
  for (const Agent* a : who) {
    std::vector<Rational> ends;
    for (const auto& v : a->beliefs.vertices()) ends.push_back(v[0]);
    std::sort(ends.begin(), ends.end());
    for (const auto& e : ends) row(e, "vertex:" + a->name);
  }
  emit(c.out, s.str());
  return kOk;
}

int cmd_fuzz(const Common& c, const std::string& axiom, const FuzzOptions& base) {
  const ProfileDocument doc = load_profile(c.profile);
  const auto ax = parse_axiom(axiom);
  if (!ax) throw InputError("unknown axiom '" + axiom + "'");
  FuzzOptions opts = base;
  opts.planted = doc.planted;
  const FuzzReport r = fuzz_axiom(doc.profile, *ax, opts);
  emit(c.out, render(c, to_json(r), human(r)));
  return r.violations.empty() ? kOk : kFail;
}

int cmd_cross(const Common& c, const std::string& condition, const FuzzOptions& base) {
  const ProfileDocument doc = load_profile(c.profile);
  const auto cond = parse_condition(condition);
  if (!cond) throw InputError("unknown condition '" + condition + "'");
  FuzzOptions opts = base;
  opts.planted = doc.planted;
  CheckOptions check;
  check.combo_cap = c.combo_cap;
  const CrossValidation cv = cross_validate(doc.profile, *cond, opts, check);
  std::ostringstream s;
  s << (cv.verdict == Consistency::consistent ? "CONSISTENT" : "INCONSISTENT") << " (" << condition_name(cv.condition)
    << " " << status_name(cv.checker_status) << "): " << cv.detail << "\n";
  emit(c.out, render(c, to_json(cv), s.str()));
  return cv.verdict == Consistency::consistent ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of Paretian axioms for multi-prior (Bewley) preference profiles"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("profile", common.profile, "Profile document (JSON)")->required();
    sub->add_option("--out", common.out, "Write the report to this file");
    sub->add_option("--format", common.format, "Report format")->check(CLI::IsMember({"human", "machine"}));
    sub->add_option("--combo-cap", common.combo_cap, "Maximum number of vertex combos");
  };

  std::string what, acts_path, kind;
  std::vector<std::size_t> agents;
  std::size_t grid = 101;
  int precision = 6;
  FuzzOptions fuzz;
  std::string sampler = "general";

  auto* check = app.add_subcommand("check", "Evaluate an axiom on an act pair or decide a condition");
  add_common(check);
  check->add_option("what", what, "Axiom (pareto, pareto-star, ct-pareto, ct-pareto-star, exchange-pareto, "
                                  "exchange-pareto-star) or condition (eq1, thm1, lemma1, eq4, thm2, corollary2, "
                                  "seu, prop1, prop2)")
      ->required();
  check->add_option("--acts", acts_path, "Acts document naming the pair (f, g)");

  auto* witness = app.add_subcommand("witness", "Construct a certified counterexample pair");
  add_common(witness);
  witness->add_option("kind", kind, "ct-pareto-star | thm1 | lemma1 | spurious-unanimity")->required();
  witness->add_option("--agents", agents, "Two agent numbers for spurious-unanimity")->delimiter(',');

  auto* plot = app.add_subcommand("plot-data", "Expected-utility curves over p_A as CSV (two states)");
  add_common(plot);
  plot->add_option("--acts", acts_path, "Acts document")->required();
  plot->add_option("--grid", grid, "Number of grid points");
  plot->add_option("--precision", precision, "Decimal digits");

  auto* fz = app.add_subcommand("fuzz", "Search random act pairs for axiom violations");
  add_common(fz);
  fz->add_option("axiom", what, "Axiom name")->required();
  auto* cv = app.add_subcommand("cross-validate", "Check a condition against its axiom");
  add_common(cv);
  cv->add_option("condition", what, "thm1, thm2 or prop2")->required();
  for (auto* sub : {fz, cv}) {
    sub->add_option("--trials", fuzz.trials, "Number of trials");
    sub->add_option("--seed", fuzz.seed, "Random seed");
    sub->add_option("--jobs", fuzz.jobs, "Worker threads");
  }
  fz->add_option("--sampler", sampler, "Act sampler")->check(CLI::IsMember({"general", "common-taste"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (check->parsed()) return cmd_check(common, what, acts_path);
    if (witness->parsed()) return cmd_witness(common, kind, agents);
    if (plot->parsed()) return cmd_plot(common, acts_path, grid, precision);
    fuzz.sampler = sampler == "general" ? Sampler::general : Sampler::common_taste;
    if (fz->parsed()) return cmd_fuzz(common, what, fuzz);
    if (cv->parsed()) return cmd_cross(common, what, fuzz);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const DimensionMismatch& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition unmet: " << e.what() << "\n";
    return kUnmet;
  } catch (const CapExceeded& e) {
    std::cerr << "precondition unmet: " << e.what() << "\n";
    return kUnmet;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInput;
}
