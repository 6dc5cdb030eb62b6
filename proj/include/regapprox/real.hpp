#pragma once

#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <string>
#include <utility>

#include "regapprox/rational.hpp"

namespace regapprox {

/// Value-semantic MPFR float. Every value carries its own precision; binary
/// operations produce the larger of the two operand precisions. No global
/// default precision is consulted after construction, so values may be used
/// freely from several threads.
class Real {
 public:
  using Bits = mpfr_prec_t;
  static constexpr Bits kDefaultBits = 256;

  explicit Real(long value = 0, Bits bits = kDefaultBits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  Real(const Integer& value, Bits bits) {
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
  }
  Real(const Rational& value, Bits bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
  }

  static Real from_string(const std::string& text, Bits bits) {
    Real r(0L, bits);
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0)
      throw InvalidArgument("real", "malformed decimal '" + text + "'");
    return r;
  }
  static Real pi(Bits bits) {
    Real r(0L, bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  /// 2^e at the given precision.
  static Real pow2(long e, Bits bits) {
    Real r(1L, bits);
    mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
  }
  static Real pow10(long e, Bits bits) {
    Real r(0L, bits);
    mpfr_set_si(r.v_, 10, MPFR_RNDN);
    mpfr_pow_si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
  }

  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  Bits precision() const { return mpfr_get_prec(v_); }
  Real with_precision(Bits bits) const {
    Real r(0L, bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Exact rational value of this binary float.
  Rational to_rational() const {
    if (is_zero()) return Rational(0);
    Integer mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v_);
    Rational q(mant);
    if (e >= 0) {
      mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
      mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return q;
  }

  /// Scientific notation with `digits` significant digits, e.g. "3.1e-18".
  std::string to_sci(int digits) const {
    if (is_zero()) return "0";
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(std::max(digits, 1)), v_, MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    std::string out;
    if (mant.front() == '-') {
      out.push_back('-');
      mant.erase(0, 1);
    }
    out.push_back(mant[0]);
    if (mant.size() > 1) {
      out.push_back('.');
      out.append(mant, 1);
    }
    out += "e" + std::to_string(static_cast<long>(e) - 1);
    return out;
  }

  /// Decimal exponent d with 10^d <= |x| < 10^(d+1).
  long decimal_exponent() const {
    if (is_zero()) throw DomainError("decimal exponent of zero");
    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, 2, v_, MPFR_RNDZ);
    mpfr_free_str(raw);
    return static_cast<long>(e) - 1;
  }

  Real& operator+=(const Real& o) { return assign_binary(o, mpfr_add); }
  Real& operator-=(const Real& o) { return assign_binary(o, mpfr_sub); }
  Real& operator*=(const Real& o) { return assign_binary(o, mpfr_mul); }
  Real& operator/=(const Real& o) { return assign_binary(o, mpfr_div); }

  friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }
  friend Real operator-(const Real& a) {
    Real r(0L, a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, long b) {
    Real r(0L, a.precision());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator*(long b, const Real& a) { return a * b; }
  friend Real operator/(const Real& a, long b) {
    Real r(0L, a.precision());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, long b) {
    Real r(0L, a.precision());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, long b) {
    Real r(0L, a.precision());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b) {
    int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  friend Real abs(const Real& a) { return unary(a, mpfr_abs); }
  friend Real sqrt(const Real& a) { return unary(a, mpfr_sqrt); }
  friend Real log10(const Real& a) { return unary(a, mpfr_log10); }
  friend Real log2(const Real& a) { return unary(a, mpfr_log2); }
  friend Real cos(const Real& a) { return unary(a, mpfr_cos); }
  friend Real sin(const Real& a) { return unary(a, mpfr_sin); }
  friend Real hypot(const Real& a, const Real& b) { return binary(a, b, mpfr_hypot); }
  friend Real pow(const Real& a, unsigned long e) {
    Real r(0L, a.precision());
    mpfr_pow_ui(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }
  friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }
  friend Real min(const Real& a, const Real& b) { return b < a ? b : a; }

 private:
  using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

  static Real binary(const Real& a, const Real& b, BinaryFn fn) {
    Real r(0L, std::max(a.precision(), b.precision()));
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  static Real unary(const Real& a, UnaryFn fn) {
    Real r(0L, a.precision());
    fn(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  Real& assign_binary(const Real& o, BinaryFn fn) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    fn(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

/// Minimal complex arithmetic over Real; enough for Aberth iteration,
/// Vandermonde inversion and eigenvalue moduli.
struct Complex {
  Real re;
  Real im;

  explicit Complex(long value = 0, Real::Bits bits = Real::kDefaultBits) : re(value, bits), im(0L, bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(Real r) : re(std::move(r)), im(0L, re.precision()) {}

  Real::Bits precision() const { return std::max(re.precision(), im.precision()); }
  bool is_real() const { return im.is_zero(); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator-=(const Complex& o) { return *this = *this - o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }

  friend bool operator==(const Complex& a, long b) { return a.re == b && a.im.is_zero(); }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

  friend Real abs(const Complex& a) { return hypot(a.re, a.im); }
  friend Complex conj(const Complex& a) { return {a.re, -a.im}; }
};

}  // namespace regapprox
