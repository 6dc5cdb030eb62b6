#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "regapprox/polynomial.hpp"
#include "regapprox/powers.hpp"
#include "regapprox/roots.hpp"

namespace regapprox {

enum class Method { Newton, Halley, Noor };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::Newton: return "newton";
    case Method::Halley: return "halley";
    case Method::Noor: return "noor";
  }
  return "?";
}

inline Method parse_method(std::string_view text) {
  if (text == "newton") return Method::Newton;
  if (text == "halley") return Method::Halley;
  if (text == "noor") return Method::Noor;
  throw InvalidArgument("methods", "unknown method '" + std::string(text) + "' (newton, halley, noor)");
}

inline Rational newton_step(const Polynomial& f, const Rational& x) {
  const Rational d = f.eval(x, 1);
  if (d == 0) throw DomainError("newton: f'(x) = 0 at x = " + to_string(x));
  return x - f.eval(x) / d;
}

inline Rational halley_step(const Polynomial& f, const Rational& x) {
  const Rational v = f.eval(x), d1 = f.eval(x, 1), d2 = f.eval(x, 2);
  const Rational den = 2 * d1 * d1 - v * d2;
  if (den == 0) throw DomainError("halley: 2f'^2 - f f'' = 0 at x = " + to_string(x));
  return x - 2 * v * d1 / den;
}

/// Returns (y_n, x_{n+1}).
inline std::pair<Rational, Rational> noor_step(const Polynomial& f, const Rational& x) {
  const Rational y = newton_step(f, x);
  const Rational v = f.eval(y), d1 = f.eval(y, 1), d2 = f.eval(y, 2);
  if (d1 == 0) throw DomainError("noor: f'(y) = 0 at y = " + to_string(y));
  return {y, y - v / d1 - v * v * d2 / (2 * d1 * d1 * d1)};
}

struct IterativeState {
  Method method = Method::Newton;
  Rational x;
  std::uint64_t n = 0;
  std::optional<Rational> y;
};

inline IterativeState advance(const Polynomial& f, IterativeState s) {
  switch (s.method) {
    case Method::Newton: s.x = newton_step(f, s.x); break;
    case Method::Halley: s.x = halley_step(f, s.x); break;
    case Method::Noor: {
      auto [y, next] = noor_step(f, s.x);
      s.y = std::move(y);
      s.x = std::move(next);
      break;
    }
  }
  ++s.n;
  return s;
}

/// Records for steps 1..steps. Digit counts are of the reduced denominator
/// (den_digits and reduced_den_digits agree). Aborts when the error grows
/// three steps in a row. With a nonzero digit budget the run stops early
/// once the next denominator, extrapolated from the last growth factor,
/// would exceed it.
inline std::vector<ApproximationRecord> run_method(Method method, const Polynomial& f, const Rational& x0,
                                                   std::uint64_t steps, RealRootRefiner& target,
                                                   std::size_t digit_budget = 0) {
  if (steps < 1) throw InvalidArgument("steps", "must be at least 1");
  std::vector<ApproximationRecord> out;
  IterativeState s{method, x0, 0, std::nullopt};
  std::optional<Real> previous = distance_to_root(x0, target);
  int growth = 0;
  std::size_t last_digits = digit_count(x0.get_den());
  for (std::uint64_t t = 1; t <= steps; ++t) {
    s = advance(f, std::move(s));
    ApproximationRecord rec;
    rec.n = t;
    rec.exponent = t;
    rec.value = s.x;
    rec.den_digits = rec.reduced_den_digits = digit_count(s.x.get_den());
    if (digit_budget != 0 && rec.den_digits > digit_budget) break;
    const std::size_t digits = rec.den_digits;
    rec.abs_error = distance_to_root(s.x, target);
    const bool grew = *rec.abs_error > *previous;
    previous = rec.abs_error;
    out.push_back(std::move(rec));
    growth = grew ? growth + 1 : 0;
    if (growth >= 3)
      throw DomainError(std::string(method_name(method)) + ": diverging from x0 = " + to_string(x0) +
                        ", error grew for 3 consecutive steps (step " + std::to_string(t) + ", error " +
                        previous->to_sci(3) + ")");
    if (digit_budget != 0 && last_digits != 0 && digits * digits / last_digits > digit_budget) break;
    last_digits = digits;
  }
  return out;
}

}  // namespace regapprox
