#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace bewley {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

/// Dense vector of exact rationals.
using Vector = std::vector<Rational>;

/// Parses an integer ("-7"), a fraction ("3/4") or a decimal literal
/// ("0.125", "-.5", "2.5e-3") into an exact rational. Throws InputError.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Decimal rendering with at most `precision` fractional digits, rounded half
/// away from zero; trailing zeros are dropped.
std::string to_decimal(const Rational& q, int precision);

inline int sign(const Rational& q) { return q.sign(); }

}  // namespace bewley
