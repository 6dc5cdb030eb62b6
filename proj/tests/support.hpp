#pragma once

// Generators and independent oracles shared by the unit tests and the
// acceptance binary. The oracles avoid the library's algorithms.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "regapprox/regapprox.hpp"

namespace regapprox {

inline void PrintTo(const Real& r, std::ostream* os) { *os << r.to_sci(20); }
inline void PrintTo(const Complex& z, std::ostream* os) { *os << z.re.to_sci(20) << (z.im.sign() < 0 ? "" : "+") << z.im.to_sci(20) << "i"; }

}  // namespace regapprox

namespace testing_support {

using regapprox::Polynomial;
using regapprox::Rational;
using regapprox::Real;
using Table = std::vector<std::vector<Rational>>;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240917);
  return engine;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

/// Canonical n/d; mpq_class(n, d) alone leaves the fraction unreduced.
inline Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline std::vector<Rational> random_vector(std::size_t m, long bound, bool allow_zero_vector = false) {
  while (true) {
    std::vector<Rational> v;
    bool nonzero = false;
    for (std::size_t i = 0; i < m; ++i) {
      v.emplace_back(uniform(-bound, bound));
      nonzero = nonzero || v.back() != 0;
    }
    if (nonzero || allow_zero_vector) return v;
  }
}

/// Small-integer u with u_m != 0 and no repeated roots.
inline Polynomial random_squarefree(std::size_t m, long bound) {
  while (true) {
    auto u = random_vector(m, bound);
    if (u.back() == 0) continue;
    Polynomial f(u);
    if (regapprox::is_squarefree(f)) return f;
  }
}

inline Table zero_table(std::size_t m) { return Table(m, std::vector<Rational>(m, Rational(0))); }

/// Coordinates of t * v modulo f, using a^m = u_1 a^(m-1) + ... + u_m.
inline std::vector<Rational> times_a(const Polynomial& f, const std::vector<Rational>& v) {
  const std::size_t m = f.degree();
  std::vector<Rational> out(m, Rational(0));
  for (std::size_t s = 0; s + 1 < m; ++s) out[s + 1] = v[s];
  for (std::size_t s = 0; s < m; ++s) out[s] += v[m - 1] * f.u(m - s);
  return out;
}

/// Column j of the oracle matrix is the coordinate vector of x(a) a^j mod f.
inline Table multiplication_matrix(const Polynomial& f, const std::vector<Rational>& x) {
  const std::size_t m = f.degree();
  Table out = zero_table(m);
  std::vector<Rational> col = x;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) out[i][j] = col[i];
    col = times_a(f, col);
  }
  return out;
}

inline Table multiply(const Table& a, const Table& b) {
  const std::size_t m = a.size();
  Table out = zero_table(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

/// Repeated multiplication, no squaring.
inline Table naive_power(const Table& a, std::uint64_t n) {
  const std::size_t m = a.size();
  Table out = zero_table(m);
  for (std::size_t i = 0; i < m; ++i) out[i][i] = 1;
  for (std::uint64_t t = 0; t < n; ++t) out = multiply(out, a);
  return out;
}

template <class M>
Table to_table(const M& m) {
  Table out = zero_table(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = m(i, j);
  return out;
}

/// f evaluated in doubles; the sign scan below uses it to count real roots.
inline double eval_double(const Polynomial& f, double t) {
  double acc = 1;
  for (std::size_t i = 1; i <= f.degree(); ++i) acc = acc * t - f.u(i).get_d();
  return acc;
}

/// Sign changes of f on a fine grid over [-b, b]. A lower bound on the
/// number of real roots; exact when the roots are well separated.
inline int grid_sign_changes(const Polynomial& f, double b, int steps) {
  int changes = 0;
  double prev = eval_double(f, -b);
  for (int s = 1; s <= steps; ++s) {
    double v = eval_double(f, -b + 2 * b * s / steps);
    if ((prev < 0 && v > 0) || (prev > 0 && v < 0)) ++changes;
    if (v != 0) prev = v;
  }
  return changes;
}

/// The roots of t^3 + t^2 - 2t - 1 are 2cos(2 pi k / 7), k = 1, 2, 3.
inline std::vector<Real> ramanujan_roots(Real::Bits bits) {
  std::vector<Real> out;
  const Real pi = Real::pi(bits);
  for (long k = 1; k <= 3; ++k) out.push_back(cos(pi * (2 * k) / 7L) * 2L);
  return out;
}

/// gamma = sum_i x_i alpha^i by direct powers.
inline Real gamma_at(const std::vector<long>& x, const Real& alpha) {
  Real acc(0L, alpha.precision());
  Real pw(1L, alpha.precision());
  for (long xi : x) {
    acc += pw * xi;
    pw *= alpha;
  }
  return acc;
}

}  // namespace testing_support
