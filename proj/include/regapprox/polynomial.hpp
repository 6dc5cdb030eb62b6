#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "regapprox/matrix.hpp"
#include "regapprox/rational.hpp"

namespace regapprox {

/// Dense polynomial with rational coefficients, lowest degree first, trailing
/// zeros trimmed. Used for exact gcd, Sturm chains and reduction modulo f.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

  bool is_zero() const { return c_.empty(); }
  /// Degree of the zero polynomial is reported as -1.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coefficient(std::size_t s) const { return s < c_.size() ? c_[s] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& t) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  RationalPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t s = 1; s < c_.size(); ++s) d.push_back(c_[s] * static_cast<long>(s));
    return RationalPoly(std::move(d));
  }

  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return RationalPoly(std::move(out));
  }
  friend RationalPoly operator-(const RationalPoly& a) {
    std::vector<Rational> out = a.c_;
    for (auto& v : out) v = -v;
    return RationalPoly(std::move(out));
  }
  friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

  /// Quotient and remainder of Euclidean division by a nonzero divisor.
  friend std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> rem = a.c_;
    if (a.degree() < b.degree()) return {RationalPoly{}, a};
    std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
    const std::size_t db = static_cast<std::size_t>(b.degree());
    for (std::size_t k = quot.size(); k-- > 0;) {
      Rational factor = rem[k + db] / b.leading();
      quot[k] = factor;
      if (factor == 0) continue;
      for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= factor * b.c_[j];
    }
    rem.resize(db);
    return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
  }

  friend RationalPoly gcd(RationalPoly a, RationalPoly b) {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (a.is_zero()) return a;
    Rational lead = a.leading();
    for (auto& v : a.c_) v /= lead;
    return a;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Monic f(t) = t^m - u_1 t^(m-1) - u_2 t^(m-2) - ... - u_m, stored as the
/// u-vector. Immutable after construction.
class Polynomial {
 public:
  explicit Polynomial(std::vector<Rational> u) : u_(std::move(u)) {
    if (u_.empty()) throw InvalidArgument("poly", "degree must be at least 1");
  }

  /// Full monic coefficient list, highest degree first; the leading entry must be 1.
  static Polynomial from_monic(std::span<const Rational> highest_first) {
    if (highest_first.size() < 2) throw InvalidArgument("poly", "need at least two coefficients");
    if (highest_first.front() != 1)
      throw InvalidArgument("poly", "leading coefficient must be 1, got " + to_string(highest_first.front()));
    std::vector<Rational> u;
    for (std::size_t s = 1; s < highest_first.size(); ++s) u.push_back(-highest_first[s]);
    return Polynomial(std::move(u));
  }

  std::size_t degree() const { return u_.size(); }
  /// u_i for 1 <= i <= m.
  const Rational& u(std::size_t i) const {
    if (i < 1 || i > u_.size()) throw InvalidArgument("u", "index out of range");
    return u_[i - 1];
  }
  std::span<const Rational> u_vector() const { return u_; }

  /// Coefficient of t^s in f.
  Rational coefficient(std::size_t s) const {
    const std::size_t m = degree();
    if (s == m) return Rational(1);
    if (s > m) return Rational(0);
    return -u_[m - s - 1];
  }

  std::vector<Rational> monic_coefficients() const {
    std::vector<Rational> out{Rational(1)};
    for (const auto& v : u_) out.push_back(-v);
    return out;
  }

  RationalPoly as_poly() const {
    std::vector<Rational> asc;
    for (std::size_t s = 0; s <= degree(); ++s) asc.push_back(coefficient(s));
    return RationalPoly(std::move(asc));
  }

  /// Exact f, f' or f'' at t (Horner on the differentiated coefficients).
  Rational eval(const Rational& t, int derivative_order = 0) const {
    if (derivative_order < 0 || derivative_order > 2)
      throw InvalidArgument("derivative_order", "must be 0, 1 or 2");
    const std::size_t m = degree();
    Rational acc(0);
    for (std::size_t s = m + 1; s-- > static_cast<std::size_t>(derivative_order);) {
      Rational c = coefficient(s);
      for (int k = 0; k < derivative_order; ++k) c *= static_cast<long>(s - static_cast<std::size_t>(k));
      acc = acc * t + c;
    }
    return acc;
  }

  std::string to_u_string() const {
    std::string out = "u:";
    for (std::size_t i = 0; i < u_.size(); ++i) out += (i ? "," : "") + to_string(u_[i]);
    return out;
  }
  std::string to_monic_string() const {
    std::string out = "c:";
    auto c = monic_coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + to_string(c[i]);
    return out;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Rational> u_;
};

/// `u:u1,...,um` or `c:cm,...,c0` (cm must be 1).
inline Polynomial parse_polynomial(std::string_view text) {
  if (text.size() < 3 || text[1] != ':')
    throw InvalidArgument("poly", "expected 'u:...' or 'c:...', got '" + std::string(text) + "'");
  auto values = parse_rational_list(text.substr(2), "poly");
  switch (text[0]) {
    case 'u': return Polynomial(std::move(values));
    case 'c': return Polynomial::from_monic(values);
    default: throw InvalidArgument("poly", "unknown polynomial format '" + std::string(1, text[0]) + "'");
  }
}

/// Monic polynomial whose roots are the reciprocals of the roots of f.
inline Polynomial reflect(const Polynomial& f) {
  const std::size_t m = f.degree();
  if (f.u(m) == 0) throw DomainError("reflect: zero constant term (0 is a root)");
  // t^m f(1/t) has ascending coefficients c_m, ..., c_0; normalise by c_0 = -u_m.
  const Rational c0 = f.coefficient(0);
  std::vector<Rational> highest_first;
  for (std::size_t s = 0; s <= m; ++s) highest_first.push_back(f.coefficient(s) / c0);
  return Polynomial::from_monic(highest_first);
}

/// g(t) = f(t - c): the roots of g are the roots of f plus c.
inline Polynomial shift(const Polynomial& f, const Rational& c) {
  const std::size_t m = f.degree();
  std::vector<Rational> a;
  for (std::size_t s = 0; s <= m; ++s) a.push_back(f.coefficient(s));
  const Rational h = -c;
  // Repeated synthetic division (Taylor shift by h).
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = m; j-- > i;) a[j] += h * a[j + 1];
  std::vector<Rational> highest_first(a.rbegin(), a.rend());
  return Polynomial::from_monic(highest_first);
}

struct CompanionMatrix {
  SquareMatrix<Rational> entries;
  Polynomial source;
};

/// Ones on the subdiagonal, last column (u_m, ..., u_1) from top to bottom.
inline CompanionMatrix companion(const Polynomial& f) {
  const std::size_t m = f.degree();
  SquareMatrix<Rational> a(m);
  for (std::size_t i = 1; i < m; ++i) a(i, i - 1) = 1;
  for (std::size_t i = 0; i < m; ++i) a(i, m - 1) = f.u(m - i);
  return {std::move(a), f};
}

}  // namespace regapprox
