#pragma once

#include "bewley/document.hpp"

#include <string>

namespace bewley::test {

inline Rational q(const char* text) { return parse_rational(text); }

inline Vector vec(std::initializer_list<const char*> xs) {
  Vector v;
  for (const char* x : xs) v.push_back(parse_rational(x));
  return v;
}

/// Point (a, 1 - a) of the two-state simplex.
inline Vector pa(const Rational& a) { return {a, 1 - a}; }
inline Vector pa(const char* a) { return pa(parse_rational(a)); }

inline Polytope interval(const char* lo, const char* hi) { return Polytope({pa(lo), pa(hi)}); }

inline ProfileDocument load(const std::string& name) { return load_profile(std::string(BEWLEY_DATA_DIR) + "/" + name); }

inline Act status_quo() { return Act::constant({0, 0}, 2); }
inline Act reform() { return Act({{30, -70}, {-70, 30}}); }
/// Second scenario: both coordinates carry the common payoff.
inline Act common_reform() { return Act({{30, 30}, {-70, -70}}); }

}  // namespace bewley::test
