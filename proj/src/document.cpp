#include "bewley/document.hpp"

#include "bewley/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bewley {

namespace {

// SAX consumer building an ordered_json tree with floats kept as strings.
class ExactBuilder {
 public:
  using number_integer_t = Json::number_integer_t;
  using number_unsigned_t = Json::number_unsigned_t;
  using number_float_t = Json::number_float_t;
  using string_t = Json::string_t;
  using binary_t = Json::binary_t;

  Json root;

  bool null() { return put(nullptr); }
  bool boolean(bool b) { return put(b); }
  bool number_integer(number_integer_t v) { return put(v); }
  bool number_unsigned(number_unsigned_t v) { return put(v); }
  bool number_float(number_float_t, const string_t& lexeme) { return put(lexeme); }
  bool string(string_t& s) { return put(s); }
  bool binary(binary_t&) { return put(nullptr); }
  bool start_object(std::size_t) { return open(Json::object()); }
  bool key(string_t& k) {
    key_ = k;
    return true;
  }
  bool end_object() {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) { return open(Json::array()); }
  bool end_array() {
    stack_.pop_back();
    return true;
  }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
    throw InputError("invalid JSON at byte " + std::to_string(position) + ": " + ex.what());
  }

 private:
  std::vector<Json*> stack_;
  std::string key_;

  Json* place(Json value) {
    if (stack_.empty()) {
      root = std::move(value);
      return &root;
    }
    Json& top = *stack_.back();
    if (top.is_array()) {
      top.push_back(std::move(value));
      return &top.back();
    }
    top[key_] = std::move(value);
    return &top[key_];
  }
  bool put(Json value) {
    place(std::move(value));
    return true;
  }
  bool open(Json container) {
    stack_.push_back(place(std::move(container)));
    return true;
  }
};

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) throw InputError(where + ": missing field '" + name + "'");
  return j.at(name);
}

std::size_t count_from_json(const Json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw InputError(what + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

Agent agent_from_json(const Json& j, const std::string& where) {
  Agent a{"", AffineUtility{}, Polytope({Vector{0}})};
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw InputError(where + ": name must be a string");
    a.name = j.at("name").get<std::string>();
  }
  const Json& u = field(j, "utility", where);
  a.utility.coeffs = vector_from_json(field(u, "coeffs", where + ".utility"));
  a.utility.constant = u.contains("constant") ? rational_from_json(u.at("constant")) : Rational(0);
  const Json& beliefs = field(j, "beliefs", where);
  if (!beliefs.is_array() || beliefs.empty()) throw InputError(where + ": beliefs must be a nonempty list of priors");
  std::vector<Vector> gens;
  for (const auto& p : beliefs) gens.push_back(vector_from_json(p));
  try {
    a.beliefs = Polytope(std::move(gens));
  } catch (const Error& e) {
    throw InputError(where + ": " + e.what());
  }
  return a;
}

Json certificate_json(const PriorCertificate& c) {
  Json j;
  j["agent"] = c.agent == kSociety ? Json("society") : Json(c.agent + 1);
  if (c.utility) j["utility"] = *c.utility + 1;
  if (c.all_utilities) j["utility"] = "all";
  j["prior"] = to_json(c.prior);
  j["gap"] = to_json(c.gap);
  return j;
}

Json owner_json(std::size_t owner) {
  if (owner == kSocietyOwner) return "society";
  if (owner == kPooledOwner) return "pooled";
  return owner + 1;
}

}  // namespace

Json parse_json_exact(std::string_view text) {
  ExactBuilder b;
  Json::sax_parse(text, &b);
  return std::move(b.root);
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_unsigned()) return Rational(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected a number, got " + j.dump());
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("expected a nonempty list of numbers, got " + j.dump());
  Vector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

Act act_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("an act is a nonempty list of outcome rows");
  std::vector<Vector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  try {
    return Act(std::move(rows));
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

ProfileDocument profile_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("profile document must be a JSON object");
  ProfileDocument doc;
  Profile& p = doc.profile;
  p.states = count_from_json(field(j, "states", "profile"), "states");
  p.outcome_dim = count_from_json(field(j, "outcome_dim", "profile"), "outcome_dim");
  const Json& agents = field(j, "agents", "profile");
  if (!agents.is_array()) throw InputError("agents must be a list");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    p.agents.push_back(agent_from_json(agents[i], "agent " + std::to_string(i + 1)));
  }
  if (j.contains("society") && !j.at("society").is_null()) {
    p.society = agent_from_json(j.at("society"), "society");
    if (p.society->name.empty()) p.society->name = "society";
  }
  auto problems = validate_profile(p);
  if (!problems.empty()) {
    std::string msg = "invalid profile:";
    for (const auto& s : problems) msg += "\n  " + s;
    throw InputError(msg);
  }
  if (j.contains("planted")) {
    for (const auto& pair : j.at("planted")) {
      Act f = act_from_json(field(pair, "f", "planted pair"));
      Act g = act_from_json(field(pair, "g", "planted pair"));
      for (const Act* a : {&f, &g}) {
        if (a->states() != p.states || a->outcome_dim() != p.outcome_dim) {
          throw InputError("planted act does not match the profile's states and outcome dimension");
        }
      }
      doc.planted.emplace_back(std::move(f), std::move(g));
    }
  }
  return doc;
}

ActsDocument acts_from_json(const Json& j) {
  ActsDocument doc;
  const Json& acts = field(j, "acts", "acts document");
  if (!acts.is_array() || acts.empty()) throw InputError("acts must be a nonempty list");
  for (std::size_t k = 0; k < acts.size(); ++k) {
    const std::string where = "act " + std::to_string(k + 1);
    const Json& name = field(acts[k], "name", where);
    if (!name.is_string()) throw InputError(where + ": name must be a string");
    doc.acts.emplace_back(name.get<std::string>(), act_from_json(field(acts[k], "rows", where)));
  }
  auto index_of = [&](const Json& n) -> std::size_t {
    if (!n.is_string()) throw InputError("pair entries must be act names");
    for (std::size_t k = 0; k < doc.acts.size(); ++k) {
      if (doc.acts[k].first == n.get<std::string>()) return k;
    }
    throw InputError("pair names unknown act '" + n.get<std::string>() + "'");
  };
  if (j.contains("pair")) {
    const Json& pr = j.at("pair");
    if (!pr.is_array() || pr.size() != 2) throw InputError("pair must name exactly two acts");
    doc.pair = std::make_pair(index_of(pr[0]), index_of(pr[1]));
  }
  return doc;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProfileDocument load_profile(const std::filesystem::path& path) {
  try {
    return profile_from_json(parse_json_exact(read_file(path)));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

ActsDocument load_acts(const std::filesystem::path& path) {
  try {
    return acts_from_json(parse_json_exact(read_file(path)));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Vector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(to_string(x));
  return j;
}

Json to_json(const Act& a) {
  Json j = Json::array();
  for (const auto& r : a.rows()) j.push_back(to_json(r));
  return j;
}

Json to_json(const Hyperplane& h) {
  return Json{{"normal", to_json(h.normal)}, {"threshold", to_json(h.threshold)}};
}

Json to_json(const Agent& a) {
  Json beliefs = Json::array();
  for (const auto& v : a.beliefs.generators()) beliefs.push_back(to_json(v));
  Json j;
  j["name"] = a.name;
  j["utility"] = Json{{"coeffs", to_json(a.utility.coeffs)}, {"constant", to_json(a.utility.constant)}};
  j["beliefs"] = std::move(beliefs);
  return j;
}

Json to_json(const ProfileDocument& doc) {
  Json j;
  j["states"] = doc.profile.states;
  j["outcome_dim"] = doc.profile.outcome_dim;
  j["agents"] = Json::array();
  for (const auto& a : doc.profile.agents) j["agents"].push_back(to_json(a));
  if (doc.profile.society) j["society"] = to_json(*doc.profile.society);
  if (!doc.planted.empty()) {
    j["planted"] = Json::array();
    for (const auto& [f, g] : doc.planted) j["planted"].push_back(Json{{"f", to_json(f)}, {"g", to_json(g)}});
  }
  return j;
}

Json to_json(const Decomposition& d) {
  return Json{{"alpha", to_json(d.alpha.weights)}, {"beta", to_json(d.beta)}};
}

Json to_json(const AxiomVerdict& v) {
  Json j;
  j["axiom"] = std::string(axiom_name(v.axiom));
  j["premise_holds"] = v.premise_holds;
  j["conclusion_holds"] = v.conclusion_holds;
  j["violation"] = v.violation;
  if (v.axiom == Axiom::ct_pareto || v.axiom == Axiom::ct_pareto_star) j["taste_agreement"] = v.taste_agreement;
  j["certificates"] = Json::array();
  for (const auto& c : v.certificates) j["certificates"].push_back(certificate_json(c));
  return j;
}

Json to_json(const ConditionReport& r) {
  Json j;
  j["condition"] = std::string(condition_name(r.condition));
  j["status"] = std::string(status_name(r.status));
  if (!r.note.empty()) j["note"] = r.note;
  if (r.decomposition) j["decomposition"] = to_json(*r.decomposition);
  if (r.part_a) j["part_a"] = std::string(status_name(*r.part_a));
  if (r.part_b) j["part_b"] = std::string(status_name(*r.part_b));
  if (r.seu_prior) j["seu_prior"] = to_json(*r.seu_prior);
  if (r.condition == Condition::corollary2) {
    j["intersection"] = Json::array();
    for (const auto& v : r.intersection) j["intersection"].push_back(to_json(v));
  }
  if (!r.memberships.empty()) {
    j["memberships"] = Json::array();
    for (const auto& m : r.memberships) {
      j["memberships"].push_back(
          Json{{"point", to_json(m.point)}, {"in", owner_json(m.owner)}, {"weights", to_json(m.weights)}});
    }
  }
  if (!r.combos.empty()) {
    j["combos"] = Json::array();
    for (const auto& c : r.combos) {
      Json combo = Json::array();
      for (auto k : c.combo) combo.push_back(k + 1);
      j["combos"].push_back(Json{{"vertices", std::move(combo)},
                                 {"gamma", to_json(c.gamma)},
                                 {"mu", to_json(c.mu)},
                                 {"point", to_json(c.point)}});
    }
  }
  if (r.status == Status::fails && !r.failing_points.empty()) {
    Json f;
    if (r.failing_combo) {
      Json combo = Json::array();
      for (auto k : *r.failing_combo) combo.push_back(k + 1);
      f["combo"] = std::move(combo);
    }
    f["points"] = Json::array();
    for (const auto& p : r.failing_points) f["points"].push_back(to_json(p));
    f["outside"] = owner_json(r.failing_owner);
    if (r.hyperplane) f["hyperplane"] = to_json(*r.hyperplane);
    j["failure"] = std::move(f);
  }
  return j;
}

Json to_json(const WitnessCertificate& c) {
  Json j;
  j["kind"] = std::string(witness_kind_name(c.kind));
  j["axiom"] = std::string(axiom_name(c.axiom));
  j["act_f"] = to_json(c.act_f);
  j["act_x"] = to_json(c.act_x);
  if (c.combo) {
    Json combo = Json::array();
    for (auto k : *c.combo) combo.push_back(k + 1);
    j["combo"] = std::move(combo);
  }
  if (c.hyperplane) j["hyperplane"] = to_json(*c.hyperplane);
  if (c.rescaled) j["rescaled_hyperplane"] = to_json(*c.rescaled);
  Json params = Json::object();
  for (const auto& [k, v] : c.params) params[k] = to_json(v);
  j["params"] = std::move(params);
  if (c.decomposition) j["decomposition"] = to_json(*c.decomposition);
  j["outcome_pairs"] = Json::array();
  for (const auto& p : c.outcome_pairs) {
    j["outcome_pairs"].push_back(Json{{"high", to_json(p.high)}, {"low", to_json(p.low)}});
  }
  j["per_agent"] = Json::array();
  for (const auto& m : c.per_agent) {
    j["per_agent"].push_back(Json{{"agent", m.agent + 1}, {"prior", to_json(m.prior)}, {"margin", to_json(m.margin)}});
  }
  j["society_margin"] = to_json(c.society_margin);
  j["society_prior"] = to_json(c.society_prior);
  return j;
}

Json to_json(const FuzzReport& r) {
  Json j;
  j["axiom"] = std::string(axiom_name(r.axiom));
  j["sampler"] = std::string(sampler_name(r.sampler));
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["premise_hits"] = r.premise_hits;
  j["violation_count"] = r.violations.size();
  j["digest"] = hex_digest(r.digest);
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  j["violations"] = Json::array();
  for (const auto& v : r.violations) {
    j["violations"].push_back(
        Json{{"trial", v.trial}, {"f", to_json(v.f)}, {"g", to_json(v.g)}, {"verdict", to_json(v.verdict)}});
  }
  return j;
}

Json to_json(const CrossValidation& cv) {
  Json j;
  j["condition"] = std::string(condition_name(cv.condition));
  j["verdict"] = cv.verdict == Consistency::consistent ? "CONSISTENT" : "INCONSISTENT";
  j["checker_status"] = std::string(status_name(cv.checker_status));
  j["detail"] = cv.detail;
  if (cv.fuzz) j["fuzz"] = to_json(*cv.fuzz);
  if (cv.witness) j["witness"] = to_json(*cv.witness);
  return j;
}

std::string hex_digest(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

}  // namespace bewley
