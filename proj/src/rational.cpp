#include "bewley/rational.hpp"

#include "bewley/errors.hpp"

#include <cctype>

namespace bewley {

namespace {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Boost reads a leading zero as an octal prefix, so strip them first.
Integer decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer(std::string(digits));
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InputError("not a rational number: '" + std::string(whole) + "'");
  Integer value = decimal_integer(s);
  return negative ? Integer(-value) : value;
}

Integer pow10(long long e) {
  Integer r = 1;
  for (long long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw InputError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(trim(s.substr(0, slash)), text);
    std::string_view den_text = trim(s.substr(slash + 1));
    if (!all_digits(den_text)) throw InputError("bad denominator in '" + std::string(text) + "'");
    Integer den = decimal_integer(den_text);
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  std::string_view body = s;
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  long long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = body.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) {
      throw InputError("bad exponent in '" + std::string(text) + "'");
    }
    exponent = std::stoll(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    body = body.substr(0, e);
  }
  std::string digits;
  long long frac_digits = 0;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = body.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw InputError("not a rational number: '" + std::string(text) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    frac_digits = static_cast<long long>(frac_part.size());
  } else {
    if (!all_digits(body)) throw InputError("not a rational number: '" + std::string(text) + "'");
    digits = std::string(body);
  }
  Integer mantissa = decimal_integer(digits);
  if (negative) mantissa = -mantissa;
  const long long shift = exponent - frac_digits;
  if (shift >= 0) return Rational(mantissa * pow10(shift));
  return Rational(mantissa, pow10(-shift));
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string to_decimal(const Rational& q, int precision) {
  if (precision < 0) precision = 0;
  Integer num = numerator(q);
  const Integer den = denominator(q);
  const bool negative = num < 0;
  if (negative) num = -num;
  Integer scaled = num * pow10(precision);
  Integer quotient = scaled / den;
  Integer remainder = scaled % den;
  if (2 * remainder >= den) quotient += 1;

  std::string digits = quotient.str();
  if (static_cast<int>(digits.size()) <= precision) {
    digits.insert(0, static_cast<std::size_t>(precision) + 1 - digits.size(), '0');
  }
  std::string int_part = digits.substr(0, digits.size() - static_cast<std::size_t>(precision));
  std::string frac_part = digits.substr(digits.size() - static_cast<std::size_t>(precision));
  while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();

  std::string out = (negative && quotient != 0) ? "-" : "";
  out += int_part;
  if (!frac_part.empty()) out += "." + frac_part;
  return out;
}

}  // namespace bewley
