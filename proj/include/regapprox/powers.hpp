#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "regapprox/matrix.hpp"
#include "regapprox/regrep.hpp"
#include "regapprox/roots.hpp"

namespace regapprox {

/// 1-based matrix position.
struct IndexPair {
  std::size_t row = 1;
  std::size_t col = 1;

  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// value_n = M^n[numerator] / M^n[denominator] + offset
struct RatioSpec {
  IndexPair numerator;
  IndexPair denominator;
  Rational offset{0};
};

struct MatrixPower {
  RegRepMatrix base;
  std::uint64_t n = 0;
  SquareMatrix<Rational> entries;
};

struct ApproximationRecord {
  /// Step index: the power for plain sequences, the step count for accelerated ones.
  std::uint64_t n = 0;
  /// Power of M actually evaluated.
  std::uint64_t exponent = 0;
  /// False when the denominator entry vanished at this n.
  bool available = true;
  Rational value;
  /// |value - target root|; empty when no target root was supplied.
  std::optional<Real> abs_error;
  /// Digits of the unreduced denominator (|M^n_{p,q}| times the offset denominator).
  std::size_t den_digits = 0;
  /// Digits of the denominator of `value` in lowest terms.
  std::size_t reduced_den_digits = 0;
};

namespace detail {

/// M = K / scale with K integral; powers are taken on K.
struct IntegralForm {
  SquareMatrix<Integer> k;
  Integer scale;
};

inline IntegralForm integral_form(const SquareMatrix<Rational>& m) {
  Integer scale(1);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m(i, j).get_den_mpz_t());
  SquareMatrix<Integer> k(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) k(i, j) = m(i, j).get_num() * (scale / m(i, j).get_den());
  return {std::move(k), std::move(scale)};
}

inline void check_index(const IndexPair& p, std::size_t m, const char* what) {
  if (p.row < 1 || p.col < 1 || p.row > m || p.col > m)
    throw InvalidArgument(what, "index (" + std::to_string(p.row) + "," + std::to_string(p.col) +
                                    ") outside 1.." + std::to_string(m));
}

inline ApproximationRecord make_record(const SquareMatrix<Integer>& kn, const RatioSpec& spec, std::uint64_t n,
                                       std::uint64_t exponent, RealRootRefiner* target) {
  ApproximationRecord rec;
  rec.n = n;
  rec.exponent = exponent;
  const Integer& den = kn(spec.denominator.row - 1, spec.denominator.col - 1);
  if (den == 0) {
    rec.available = false;
    return rec;
  }
  const Integer& num = kn(spec.numerator.row - 1, spec.numerator.col - 1);
  rec.value = make_rational(num, den) + spec.offset;
  rec.den_digits = digit_count(Integer(abs(den) * spec.offset.get_den()));
  rec.reduced_den_digits = digit_count(rec.value.get_den());
  if (target) rec.abs_error = distance_to_root(rec.value, *target);
  return rec;
}

inline void require_some_available(const std::vector<ApproximationRecord>& recs, const RatioSpec& spec) {
  for (const auto& r : recs)
    if (r.available) return;
  throw DomainError("denominator entry M^n(" + std::to_string(spec.denominator.row) + "," +
                    std::to_string(spec.denominator.col) + ") is zero at every requested n");
}

}  // namespace detail

inline MatrixPower mat_pow(const RegRepMatrix& m, std::uint64_t n) {
  auto form = detail::integral_form(m.entries);
  auto kn = power(form.k, n);
  Integer scale_n;
  mpz_pow_ui(scale_n.get_mpz_t(), form.scale.get_mpz_t(), n);
  SquareMatrix<Rational> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = make_rational(kn(i, j), scale_n);
  return {m, n, std::move(out)};
}

/// Records for each requested n (sorted, duplicates dropped). Zero
/// denominators mark the record unavailable; if every record is unavailable
/// the call fails. Pass a target root to get abs_error.
inline std::vector<ApproximationRecord> ratio_sequence(const RegRepMatrix& m, const RatioSpec& spec,
                                                       std::vector<std::uint64_t> n_list,
                                                       RealRootRefiner* target = nullptr) {
  detail::check_index(spec.numerator, m.size(), "num");
  detail::check_index(spec.denominator, m.size(), "den");
  std::sort(n_list.begin(), n_list.end());
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());

  auto form = detail::integral_form(m.entries);
  std::vector<ApproximationRecord> out;
  SquareMatrix<Integer> current = SquareMatrix<Integer>::identity(m.size());
  std::uint64_t at = 0;
  for (auto n : n_list) {
    current = current * power(form.k, n - at);
    at = n;
    out.push_back(detail::make_record(current, spec, n, n, target));
  }
  detail::require_some_available(out, spec);
  return out;
}

enum class Schedule {
  /// N = M^s, step t uses N^t = M^(s t).
  Arithmetic,
  /// N_1 = M^s, N_t = N_{t-1}^s = M^(s^t).
  Geometric,
};

inline std::vector<ApproximationRecord> accelerated_sequence(const RegRepMatrix& m, std::uint64_t stride,
                                                             const RatioSpec& spec, std::uint64_t steps,
                                                             Schedule schedule = Schedule::Arithmetic,
                                                             RealRootRefiner* target = nullptr) {
  if (stride < 1) throw InvalidArgument("stride", "must be at least 1");
  detail::check_index(spec.numerator, m.size(), "num");
  detail::check_index(spec.denominator, m.size(), "den");
  auto form = detail::integral_form(m.entries);
  const auto n_matrix = power(form.k, stride);
  SquareMatrix<Integer> current = n_matrix;
  std::uint64_t exponent = stride;
  std::vector<ApproximationRecord> out;
  for (std::uint64_t t = 1; t <= steps; ++t) {
    if (t > 1) {
      if (schedule == Schedule::Arithmetic) {
        current = current * n_matrix;
        exponent += stride;
      } else {
        if (exponent > std::numeric_limits<std::uint64_t>::max() / stride)
          throw InvalidArgument("steps", "exponent overflows 64 bits");
        current = power(current, stride);
        exponent *= stride;
      }
    }
    out.push_back(detail::make_record(current, spec, t, exponent, target));
  }
  detail::require_some_available(out, spec);
  return out;
}

struct ConstantRatioEntry {
  std::size_t i = 0, j = 0, p = 0, q = 0;
  bool skipped = false;
  std::string note;
  /// The common value over the checked range, when every available n agreed.
  std::optional<Rational> constant;
  bool constant_over_range = false;
  std::vector<std::uint64_t> zero_denominator_n;
};

struct ConstantRatioReport {
  std::uint64_t n_max = 0;
  std::vector<ConstantRatioEntry> entries;
};

/// Checks that M^n(m,m-1)/M^n(1,m) and M^n(m,1)/M^n(1,2) do not depend on n
/// for n = 1..n_max, by exact comparison.
inline ConstantRatioReport constant_ratio_check(const RegRepMatrix& m, std::uint64_t n_max) {
  const std::size_t size = m.size();
  if (size < 2) throw InvalidArgument("poly", "constant ratio check needs degree at least 2");
  ConstantRatioReport report;
  report.n_max = n_max;
  auto pattern = [](std::size_t i, std::size_t j, std::size_t p, std::size_t q) {
    ConstantRatioEntry e;
    e.i = i;
    e.j = j;
    e.p = p;
    e.q = q;
    return e;
  };
  report.entries.push_back(pattern(size, size - 1, 1, size));
  report.entries.push_back(pattern(size, 1, 1, 2));
  if (size == 2) {
    report.entries[1].skipped = true;
    report.entries[1].note = "indices coincide with the first pattern for m = 2";
  }

  auto form = detail::integral_form(m.entries);
  SquareMatrix<Integer> current = SquareMatrix<Integer>::identity(size);
  for (auto& e : report.entries) e.constant_over_range = !e.skipped;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    current = current * form.k;
    for (auto& e : report.entries) {
      if (e.skipped) continue;
      const Integer& den = current(e.p - 1, e.q - 1);
      if (den == 0) {
        e.zero_denominator_n.push_back(n);
        continue;
      }
      Rational v = make_rational(current(e.i - 1, e.j - 1), den);
      if (!e.constant) {
        e.constant = v;
      } else if (*e.constant != v) {
        e.constant_over_range = false;
      }
    }
  }
  for (auto& e : report.entries)
    if (!e.skipped && !e.constant) {
      e.constant_over_range = false;
      e.note = "denominator zero at every n";
    }
  return report;
}

}  // namespace regapprox
