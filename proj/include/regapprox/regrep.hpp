#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "regapprox/matrix.hpp"
#include "regapprox/polynomial.hpp"
#include "regapprox/rational.hpp"

namespace regapprox {

/// Coordinates (x_0, ..., x_{m-1}) of the element x_0 + x_1 a + ... + x_{m-1} a^{m-1}.
class Weights {
 public:
  explicit Weights(std::vector<Rational> x) : x_(std::move(x)) {
    if (x_.empty()) throw InvalidArgument("x", "weights must be non-empty");
    bool all_zero = true;
    for (const auto& v : x_) all_zero = all_zero && v == 0;
    if (all_zero) throw InvalidArgument("x", "weights must not all be zero");
  }

  std::size_t size() const { return x_.size(); }
  const Rational& operator[](std::size_t i) const { return x_[i]; }
  std::span<const Rational> values() const { return x_; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < x_.size(); ++i) out += (i ? "," : "") + regapprox::to_string(x_[i]);
    return out;
  }

  friend bool operator==(const Weights&, const Weights&) = default;

 private:
  std::vector<Rational> x_;
};

/// Matrix of multiplication by sum x_i a^i on the basis (1, a, ..., a^{m-1}).
struct RegRepMatrix {
  SquareMatrix<Rational> entries;
  Weights weights;
  Polynomial poly;

  std::size_t size() const { return entries.size(); }
  /// 1-based access.
  const Rational& at(std::size_t i, std::size_t j) const {
    if (i < 1 || j < 1 || i > size() || j > size()) throw InvalidArgument("index", "matrix index out of range");
    return entries(i - 1, j - 1);
  }
};

namespace detail {
inline void require_arity(const Polynomial& f, const Weights& x) {
  if (x.size() != f.degree())
    throw InvalidArgument("x", "expected " + std::to_string(f.degree()) + " weights, got " + std::to_string(x.size()));
}
}  // namespace detail

/// M = sum_n x_n A^n, accumulated Horner-style: M = (...(x_{m-1} A + x_{m-2}) A + ...) + x_0.
inline RegRepMatrix build(const Polynomial& f, const Weights& x) {
  detail::require_arity(f, x);
  const std::size_t m = f.degree();
  const auto a = companion(f).entries;
  SquareMatrix<Rational> acc = x[m - 1] * SquareMatrix<Rational>::identity(m);
  for (std::size_t n = m - 1; n-- > 0;) acc = acc * a + x[n] * SquareMatrix<Rational>::identity(m);
  return {std::move(acc), x, f};
}

/// Closed form for t^3 - p t^2 - q t - r with weights (x, y, z).
inline RegRepMatrix build_cubic(const Rational& p, const Rational& q, const Rational& r, const Rational& x,
                                const Rational& y, const Rational& z) {
  SquareMatrix<Rational> e(3);
  e(0, 0) = x;
  e(0, 1) = r * z;
  e(0, 2) = r * y + p * r * z;
  e(1, 0) = y;
  e(1, 1) = x + q * z;
  e(1, 2) = q * y + (p * q + r) * z;
  e(2, 0) = z;
  e(2, 1) = y + p * z;
  e(2, 2) = x + p * y + (p * p + q) * z;
  return {std::move(e), Weights({x, y, z}), Polynomial({p, q, r})};
}

/// Entry (i, j) of A^n from the closed multinomial sum over k_1 + 2k_2 + ... + m k_m = n - i + j.
/// 1-based indices.
inline Rational entry_multinomial(const Polynomial& f, std::size_t i, std::size_t j, std::size_t n) {
  const std::size_t m = f.degree();
  if (i < 1 || j < 1 || i > m || j > m) throw InvalidArgument("index", "entry index out of range");
  const long target = static_cast<long>(n) - static_cast<long>(i) + static_cast<long>(j);
  if (target < 0) return Rational(0);
  // The empty composition stands for the shifted identity blocks of A^n.
  if (target == 0) return Rational(1);

  Rational total(0);
  std::vector<long> k(m + 1, 0);  // k[s] for s = 1..m
  // Depth-first over k_m, k_{m-1}, ..., k_1 with the remaining weight as the bound.
  std::function<void(std::size_t, long)> visit = [&](std::size_t s, long remaining) {
    if (s == 0) {
      if (remaining != 0) return;
      long parts = 0;
      long tail = 0;
      for (std::size_t t = 1; t <= m; ++t) parts += k[t];
      for (std::size_t t = m + 1 - i; t <= m; ++t) tail += k[t];
      if (tail == 0) return;
      // multinomial(parts; k_1..k_m) built as a product of binomials
      Integer coeff(1);
      long used = 0;
      for (std::size_t t = 1; t <= m; ++t) {
        Integer b;
        used += k[t];
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(used), static_cast<unsigned long>(k[t]));
        coeff *= b;
      }
      Rational term = Rational(coeff) * Rational(tail) / Rational(parts);
      for (std::size_t t = 1; t <= m; ++t) {
        Rational pw;
        mpz_pow_ui(pw.get_num_mpz_t(), f.u(t).get_num_mpz_t(), static_cast<unsigned long>(k[t]));
        mpz_pow_ui(pw.get_den_mpz_t(), f.u(t).get_den_mpz_t(), static_cast<unsigned long>(k[t]));
        pw.canonicalize();
        term *= pw;
      }
      total += term;
      return;
    }
    for (long c = 0; c * static_cast<long>(s) <= remaining; ++c) {
      k[s] = c;
      visit(s - 1, remaining - c * static_cast<long>(s));
    }
    k[s] = 0;
  };
  visit(m, target);
  return total;
}

/// Same matrix as build(), assembled entry by entry from entry_multinomial.
inline RegRepMatrix entries_via_formula(const Polynomial& f, const Weights& x) {
  detail::require_arity(f, x);
  const std::size_t m = f.degree();
  SquareMatrix<Rational> e(m);
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      Rational acc(0);
      for (std::size_t n = 0; n < m; ++n)
        if (x[n] != 0) acc += x[n] * entry_multinomial(f, i, j, n);
      e(i - 1, j - 1) = acc;
    }
  return {std::move(e), x, f};
}

/// Coordinates of (sum x_i a^i)(sum y_i a^i) reduced modulo f.
inline Weights multiply_elements(const Polynomial& f, const Weights& x, const Weights& y) {
  detail::require_arity(f, x);
  detail::require_arity(f, y);
  RationalPoly px({x.values().begin(), x.values().end()});
  RationalPoly py({y.values().begin(), y.values().end()});
  auto rem = divmod(px * py, f.as_poly()).second;
  std::vector<Rational> out(f.degree(), Rational(0));
  for (std::size_t s = 0; s < rem.coefficients().size(); ++s) out[s] = rem.coefficients()[s];
  bool all_zero = true;
  for (const auto& v : out) all_zero = all_zero && v == 0;
  if (all_zero) throw DomainError("multiply_elements: product is zero (f is reducible)");
  return Weights(std::move(out));
}

}  // namespace regapprox
