#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "regapprox/errors.hpp"

namespace regapprox {

using Integer = mpz_class;
/// Always canonical: reduced, positive denominator.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Number of decimal digits of |v|. Zero has no digit count here.
inline std::size_t digit_count(const Integer& v) {
  if (v == 0) throw InvalidArgument("value", "digit count of zero is undefined");
  // mpz_sizeinbase may overshoot by one for base 10.
  std::size_t d = mpz_sizeinbase(v.get_mpz_t(), 10);
  Integer bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 10, d - 1);
  Integer a = abs(v);
  return a < bound ? d - 1 : d;
}

/// Accepts `[+-]digits[/digits]`.
inline Rational parse_rational(std::string_view text, const std::string& parameter = "rational") {
  auto fail = [&](const char* why) -> Rational {
    throw InvalidArgument(parameter, std::string(why) + " in literal '" + std::string(text) + "'");
  };
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) return fail("empty rational");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
  auto all_digits = [](std::string_view d) {
    if (d.empty()) return false;
    for (char c : d)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (!all_digits(num)) return fail("malformed numerator");
  if (slash != std::string_view::npos && !all_digits(den)) return fail("malformed denominator");

  Integer n(std::string(num), 10);
  Integer d = slash == std::string_view::npos ? Integer(1) : Integer(std::string(den), 10);
  if (d == 0) return fail("zero denominator");
  if (negative) n = -n;
  return make_rational(n, d);
}

/// Comma-separated list of rational literals.
inline std::vector<Rational> parse_rational_list(std::string_view text,
                                                 const std::string& parameter = "list") {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma - start), parameter));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace regapprox
