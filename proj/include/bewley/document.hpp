#pragma once

#include "bewley/harness.hpp"

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bewley {

using Json = nlohmann::ordered_json;

/// Parses JSON keeping every non-integer number as its literal text, so
/// "0.2" can be read back as exactly 1/5. Throws InputError.
Json parse_json_exact(std::string_view text);

/// Accepts integers, decimal strings, "p/q" strings and exact float literals.
Rational rational_from_json(const Json& j);
Vector vector_from_json(const Json& j);
Act act_from_json(const Json& j);

struct ProfileDocument {
  Profile profile;
  std::vector<std::pair<Act, Act>> planted;
};

/// Parses and validates a profile document; throws InputError listing every
/// structural violation.
ProfileDocument profile_from_json(const Json& j);

struct ActsDocument {
  std::vector<std::pair<std::string, Act>> acts;
  std::optional<std::pair<std::size_t, std::size_t>> pair;  // indices into acts
};

ActsDocument acts_from_json(const Json& j);

std::string read_file(const std::filesystem::path& path);
ProfileDocument load_profile(const std::filesystem::path& path);
ActsDocument load_acts(const std::filesystem::path& path);

Json to_json(const Rational& q);
Json to_json(const Vector& v);
Json to_json(const Act& a);
Json to_json(const Hyperplane& h);
Json to_json(const Agent& a);
Json to_json(const ProfileDocument& doc);
Json to_json(const Decomposition& d);
Json to_json(const AxiomVerdict& v);
Json to_json(const ConditionReport& r);
Json to_json(const WitnessCertificate& c);
Json to_json(const FuzzReport& r);
Json to_json(const CrossValidation& cv);

std::string hex_digest(std::uint64_t digest);

}  // namespace bewley
