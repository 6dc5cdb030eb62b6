#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "regapprox/matrix.hpp"
#include "regapprox/powers.hpp"
#include "regapprox/regrep.hpp"
#include "regapprox/roots.hpp"

namespace regapprox {

struct ConvergenceReport {
  explicit ConvergenceReport(RootSet r) : roots(std::move(r)) {}

  RootSet roots;
  /// gamma_j = sum_i x_i alpha_j^i, the eigenvalues of M, in root order.
  std::vector<Complex> gamma;
  std::vector<Real> gamma_modulus;
  /// Bound on | |gamma_j| - gamma_modulus[j] | from the root radii.
  std::vector<Real> gamma_radius;
  std::size_t dominant = 0;
  /// Index of the largest |gamma_j| with j != dominant; equals dominant when
  /// no other gamma is nonzero.
  std::size_t runner_up = 0;
  /// min_{j != k} |gamma_k| / |gamma_j|; +inf when every other gamma vanishes.
  Real c_value;
  Real c_inverse;
  bool certified = false;
  Real::Bits precision_bits = 0;
};

struct AnalyzeOptions {
  Real::Bits ceiling_bits = 4096;
};

namespace detail {

inline Real infinity(Real::Bits bits) {
  Real r(0L, bits);
  mpfr_set_inf(r.get(), 1);
  return r;
}

inline void require_weights(const Polynomial& f, const Weights& x) {
  if (x.size() != f.degree())
    throw InvalidArgument("x", "expected " + std::to_string(f.degree()) + " weights, got " + std::to_string(x.size()));
}

}  // namespace detail

/// Evaluates gamma and the dominance data on a fixed root set. `certified`
/// says whether the gamma intervals separate the dominant modulus strictly.
inline ConvergenceReport analyze_with_roots(const RootSet& roots, const Weights& x, Real::Bits bits) {
  const auto& f = roots.source;
  detail::require_weights(f, x);
  const std::size_t m = f.degree();
  ConvergenceReport rep(roots);
  rep.precision_bits = bits;
  const Real eps = Real::pow2(-(bits - 8), bits);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& root = roots.roots[j];
    const Real mod = abs(root.center);
    const Real hi = mod + root.radius;
    Complex g(0L, bits);
    Complex pw(1L, bits);
    Real spread(0L, bits);
    Real magnitude(0L, bits);
    Real pw_mod(1L, bits), pw_hi(1L, bits);
    for (std::size_t i = 0; i < m; ++i) {
      const Real xi(x[i], bits);
      g += pw * xi;
      // |alpha^i - a^i| <= (|a| + r)^i - |a|^i
      spread += abs(xi) * (pw_hi - pw_mod);
      magnitude += abs(xi) * pw_hi;
      pw = pw * root.center;
      pw_mod *= mod;
      pw_hi *= hi;
    }
    rep.gamma.push_back(g);
    rep.gamma_modulus.push_back(abs(g));
    rep.gamma_radius.push_back(spread + magnitude * eps);
  }

  std::size_t k = 0;
  for (std::size_t j = 1; j < m; ++j)
    if (rep.gamma_modulus[j] > rep.gamma_modulus[k]) k = j;
  rep.dominant = k;

  std::optional<std::size_t> l;
  for (std::size_t j = 0; j < m; ++j) {
    if (j == k) continue;
    if (!l || rep.gamma_modulus[j] > rep.gamma_modulus[*l]) l = j;
  }
  const Real lower_k = rep.gamma_modulus[k] - rep.gamma_radius[k];
  bool certified = lower_k > 0;
  for (std::size_t j = 0; j < m && certified; ++j)
    if (j != k && !(lower_k > rep.gamma_modulus[j] + rep.gamma_radius[j])) certified = false;
  rep.certified = certified;

  if (!l || rep.gamma_modulus[*l].is_zero()) {
    rep.runner_up = l.value_or(k);
    rep.c_value = detail::infinity(bits);
    rep.c_inverse = Real(0L, bits);
  } else {
    rep.runner_up = *l;
    rep.c_value = rep.gamma_modulus[k] / rep.gamma_modulus[*l];
    rep.c_inverse = rep.gamma_modulus[*l] / rep.gamma_modulus[k];
  }
  return rep;
}

/// Roots, gamma values and the dominance criterion, with precision doubled
/// until the dominant |gamma| is strictly separated or the ceiling is hit.
inline ConvergenceReport analyze(const Polynomial& f, const Weights& x, Real::Bits precision_bits = 256,
                                 AnalyzeOptions opts = {}) {
  detail::require_weights(f, x);
  if (precision_bits < 64) throw InvalidArgument("precision", "must be at least 64 bits");
  Real::Bits bits = precision_bits;
  const Real::Bits ceiling = std::max(opts.ceiling_bits, precision_bits);
  while (true) {
    auto rep = analyze_with_roots(all_roots(f, bits), x, bits);
    if (rep.certified) return rep;
    if (rep.gamma_modulus[rep.dominant] <= rep.gamma_radius[rep.dominant])
      throw DomainError("analyze: every gamma_j is zero within the root radii");
    if (bits >= ceiling)
      throw DomainError("analyze: dominance undecidable, |gamma_" + std::to_string(rep.dominant + 1) + "| and |gamma_" +
                        std::to_string(rep.runner_up + 1) + "| tie within the root radii at " +
                        std::to_string(bits) + " bits");
    bits = std::min<Real::Bits>(bits * 2, ceiling);
  }
}

/// Vandermonde data for the spectral form M^n = V^-1 diag(gamma^n) V with
/// V(s, t) = alpha_s^t (0-based).
struct SpectralData {
  SquareMatrix<Complex> v;
  SquareMatrix<Complex> v_inv;
  std::vector<Complex> gamma;
  /// max |(V V^-1 - I)_{ij}|
  Real residual;

  /// Numerical M^n_{i,j} (1-based) as sum_s V^-1_{i,s} V_{s,j} gamma_s^n.
  Complex entry(std::size_t i, std::size_t j, std::uint64_t n) const {
    Complex acc(0L, residual.precision());
    for (std::size_t s = 0; s < gamma.size(); ++s) {
      Complex g(1L, residual.precision());
      for (std::uint64_t t = 0; t < n; ++t) g = g * gamma[s];
      acc += v_inv(i - 1, s) * v(s, j - 1) * g;
    }
    return acc;
  }
};

namespace detail {

inline SquareMatrix<Complex> complex_inverse(SquareMatrix<Complex> a, Real::Bits bits) {
  const std::size_t n = a.size();
  auto inv = SquareMatrix<Complex>::identity(n, Complex(1L, bits), Complex(0L, bits));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(a(r, col)) > abs(a(pivot, col))) pivot = r;
    if (abs(a(pivot, col)).is_zero()) throw DomainError("Vandermonde matrix is singular (coincident roots)");
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const Complex d = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = a(col, j) / d;
      inv(col, j) = inv(col, j) / d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex factor = a(r, col);
      if (factor == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= factor * a(col, j);
        inv(r, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

inline SquareMatrix<Complex> vandermonde(const RootSet& roots, Real::Bits bits) {
  const std::size_t m = roots.roots.size();
  SquareMatrix<Complex> v(m, Complex(0L, bits));
  for (std::size_t s = 0; s < m; ++s) {
    Complex pw(1L, bits);
    for (std::size_t t = 0; t < m; ++t) {
      v(s, t) = pw;
      pw = pw * roots.roots[s].center;
    }
  }
  return v;
}

inline Real max_abs_deviation_from_identity(const SquareMatrix<Complex>& p) {
  Real worst(0L, p.size() ? p(0, 0).precision() : 64);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) {
      Complex d = p(i, j);
      if (i == j) d.re -= Real(1L, d.precision());
      worst = max(worst, abs(d));
    }
  return worst;
}

}  // namespace detail

/// Working tolerance for checks on numerically computed spectral data.
inline Real spectral_tolerance(Real::Bits bits) { return Real::pow2(-(bits / 4), bits); }

inline SpectralData spectral_decomposition(const ConvergenceReport& report) {
  const Real::Bits bits = report.precision_bits;
  SpectralData out;
  out.v = detail::vandermonde(report.roots, bits);
  out.v_inv = detail::complex_inverse(out.v, bits);
  out.gamma = report.gamma;
  out.residual = detail::max_abs_deviation_from_identity(out.v * out.v_inv);
  if (out.residual > spectral_tolerance(bits))
    throw DomainError("Vandermonde inversion residual " + out.residual.to_sci(3) +
                      " exceeds tolerance (near-coincident roots)");
  return out;
}

/// max |(V A V^-1 - diag(alpha))_{ij}|
inline Real diagonalization_residual(const ConvergenceReport& report) {
  const Real::Bits bits = report.precision_bits;
  const auto spec = spectral_decomposition(report);
  const auto a = companion(report.roots.source).entries.map([&](const Rational& q) { return Complex(Real(q, bits)); });
  const auto d = spec.v * a * spec.v_inv;
  Real worst(0L, bits);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) {
      Complex e = d(i, j);
      if (i == j) e -= report.roots.roots[i].center;
      worst = max(worst, abs(e));
    }
  return worst;
}

struct LimitPrediction {
  IndexPair numerator;
  IndexPair denominator;
  Complex limit;
  /// Sensitivity of the limit to perturbing the roots by their radii.
  Real limit_error;
  Complex a_k, b_k, a_l, b_l;
  /// A_l B_k - A_k B_l
  Complex cross;
  Real rate_constant;
  bool degenerate = false;
  /// The exact constant for the index patterns whose ratio never depends on n.
  std::optional<Rational> exact_constant;
  Real inversion_residual;
};

namespace detail {

/// Ratios between M_{1,m} and M_{m,m-1}, or between M_{1,2} and M_{m,1},
/// are the same for every power of a regular representation matrix:
/// M_{1,m} = u_m M_{m,m-1} and M_{1,2} = u_m M_{m,1}.
inline std::optional<Rational> exact_constant_ratio(const Polynomial& f, const IndexPair& num, const IndexPair& den) {
  const std::size_t m = f.degree();
  if (m < 2) return std::nullopt;
  const Rational& um = f.u(m);
  auto is = [](const IndexPair& p, std::size_t r, std::size_t c) { return p.row == r && p.col == c; };
  const std::pair<IndexPair, IndexPair> patterns[] = {{{1, m}, {m, m - 1}}, {{1, 2}, {m, 1}}};
  for (const auto& [big, small] : patterns) {
    if (is(num, big.row, big.col) && is(den, small.row, small.col)) return um;
    if (is(num, small.row, small.col) && is(den, big.row, big.col) && um != 0) return 1 / um;
  }
  return std::nullopt;
}

struct RawLimit {
  Complex a_k, b_k, a_l, b_l;
};

inline RawLimit raw_limit(const SquareMatrix<Complex>& v, const SquareMatrix<Complex>& v_inv, const IndexPair& num,
                          const IndexPair& den, std::size_t k, std::size_t l) {
  return {v_inv(num.row - 1, k) * v(k, num.col - 1), v_inv(den.row - 1, k) * v(k, den.col - 1),
          v_inv(num.row - 1, l) * v(l, num.col - 1), v_inv(den.row - 1, l) * v(l, den.col - 1)};
}

}  // namespace detail

/// Limit of M^n_{i,j} / M^n_{p,q} and the data of its convergence rate.
inline LimitPrediction limit_ratio(const ConvergenceReport& report, const IndexPair& num, const IndexPair& den) {
  const std::size_t m = report.roots.source.degree();
  detail::check_index(num, m, "num");
  detail::check_index(den, m, "den");
  if (!report.certified) throw DomainError("limit_ratio: dominance of gamma_k is not certified");
  const Real::Bits bits = report.precision_bits;
  const auto spec = spectral_decomposition(report);
  const std::size_t k = report.dominant, l = report.runner_up;
  auto raw = detail::raw_limit(spec.v, spec.v_inv, num, den, k, l);

  // Same computation from roots moved by their radii; the spread estimates
  // how far root uncertainty moves each quantity.
  RootSet coarse = report.roots;
  Real widest(0L, bits);
  for (auto& r : coarse.roots) {
    r.center.re += r.radius;
    widest = max(widest, r.radius);
  }
  const auto v_c = detail::vandermonde(coarse, bits);
  const auto raw_c = detail::raw_limit(v_c, detail::complex_inverse(v_c, bits), num, den, k, l);

  LimitPrediction out;
  out.numerator = num;
  out.denominator = den;
  out.a_k = raw.a_k;
  out.b_k = raw.b_k;
  out.a_l = raw.a_l;
  out.b_l = raw.b_l;
  out.inversion_residual = spec.residual;
  // Nothing computed from the roots is sharper than their radii or the
  // rounding amplified through V^-1.
  const Real floor_tol = max(max(widest, spec.residual) * 256L, Real::pow2(-(bits - 16), bits));

  const Real b_err = abs(raw.b_k - raw_c.b_k) * 4L;
  if (abs(raw.b_k) <= max(b_err, floor_tol))
    throw DomainError("limit_ratio: B_k = V^-1(" + std::to_string(den.row) + "," + std::to_string(k + 1) + ") V(" +
                      std::to_string(k + 1) + "," + std::to_string(den.col) + ") is indistinguishable from zero");
  out.limit = raw.a_k / raw.b_k;
  out.limit_error = max(abs(out.limit - raw_c.a_k / raw_c.b_k) * 4L, floor_tol * max(abs(out.limit), Real(1L, bits)));

  out.cross = raw.a_l * raw.b_k - raw.a_k * raw.b_l;
  const Complex cross_c = raw_c.a_l * raw_c.b_k - raw_c.a_k * raw_c.b_l;
  out.exact_constant = detail::exact_constant_ratio(report.roots.source, num, den);
  if (out.exact_constant) {
    out.degenerate = true;
    out.limit = Complex(Real(*out.exact_constant, bits));
    out.limit_error = Real(0L, bits);
  } else if (k == l) {
    out.degenerate = false;
  } else {
    const Real scale = max(Real(1L, bits), max(abs(raw.a_k), abs(raw.a_l)) * max(abs(raw.b_k), abs(raw.b_l)));
    out.degenerate = abs(out.cross) <= max(abs(out.cross - cross_c) * 4L, floor_tol * scale);
  }
  out.rate_constant = out.degenerate || k == l ? Real(0L, bits) : abs(out.cross) / (abs(raw.b_k) * abs(raw.b_k));
  return out;
}

/// Closed-form limit matrix lim M^n_{i,j} / M^n_{h,k} for a cubic, in the
/// dominant root alpha and the coefficients p = u_1, r = u_3. The numerator
/// (i, j) is (2,2) or (3,3).
inline SquareMatrix<Real> cubic_limit_matrix(const ConvergenceReport& report, const IndexPair& numerator) {
  const auto& f = report.roots.source;
  if (f.degree() != 3) throw InvalidArgument("poly", "closed-form limit matrices need a cubic");
  if (!report.certified) throw DomainError("cubic_limit_matrix: dominance is not certified");
  if (f.u(3) == 0) throw DomainError("cubic_limit_matrix: r = 0");
  const auto& root = report.roots.roots[report.dominant];
  if (!root.is_real) throw DomainError("cubic_limit_matrix: dominant root is not real");
  const Real::Bits bits = report.precision_bits;
  const Real a = root.center.re;
  const Real p(f.u(1), bits), r(f.u(3), bits);
  const Real one(1L, bits);
  const Real ap = a - p;
  SquareMatrix<Real> out(3, Real(0L, bits));
  auto set_row = [&](std::size_t i, const Real& c0, const Real& c1, const Real& c2) {
    out(i, 0) = c0;
    out(i, 1) = c1;
    out(i, 2) = c2;
  };
  if (numerator == IndexPair{2, 2}) {
    set_row(2, a * ap, ap, ap / a);
    set_row(1, a, one, one / a);
    set_row(0, a * a * ap / r, a * ap / r, ap / r);
  } else if (numerator == IndexPair{3, 3}) {
    set_row(0, a * a * a / r, a * a / r, a / r);
    set_row(1, a * a / ap, a / ap, one / ap);
    set_row(2, a * a, a, one);
  } else {
    throw InvalidArgument("num", "closed forms exist for numerator (2,2) or (3,3)");
  }
  return out;
}

/// Offset turning the ratio limit into the dominant root: alpha_k - L, when
/// that difference is a rational with a small denominator.
inline Rational auto_offset(const ConvergenceReport& report, const LimitPrediction& prediction,
                            const Integer& max_denominator = Integer(1000000)) {
  const auto& root = report.roots.roots[report.dominant];
  if (!root.is_real || abs(prediction.limit.im) > prediction.limit_error)
    throw DomainError("auto offset: dominant root or limit is not real");
  const Real diff = root.center.re - prediction.limit.re;
  const Real tol = max(prediction.limit_error, root.radius) * 16L + spectral_tolerance(report.precision_bits);
  // Continued-fraction convergents of diff.
  Rational x = diff.to_rational();
  Integer h0(0), h1(1), k0(1), k1(0);
  for (int it = 0; it < 64; ++it) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_denominator) break;
    Rational candidate = make_rational(h2, k2);
    if (abs(Real(candidate, report.precision_bits) - diff) <= tol) return candidate;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    Rational frac = x - Rational(a);
    if (frac == 0) break;
    x = 1 / frac;
  }
  throw DomainError("auto offset: alpha - L = " + diff.to_sci(12) +
                    " is not a rational with a small denominator; pass --offset explicitly");
}

struct RateSummary {
  /// c^-1, the predicted per-step error factor.
  Real factor;
  Real rate_constant;
  /// -log10 c
  double predicted_slope = 0;
  /// Least-squares slope of log10 |error| against n.
  double measured_slope = 0;
  double relative_deviation = 0;
  std::size_t points_used = 0;
};

/// Fits log10 abs_error against n over the last `tail_fraction` of the
/// available records.
inline RateSummary rate_report(const LimitPrediction& prediction, const ConvergenceReport& report,
                               const std::vector<ApproximationRecord>& measured, double tail_fraction = 0.5) {
  if (prediction.degenerate) throw DomainError("rate_report: degenerate index choice, the ratio does not converge");
  if (!(tail_fraction > 0 && tail_fraction <= 1)) throw InvalidArgument("tail_fraction", "must lie in (0, 1]");
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : measured) {
    if (!r.available || !r.abs_error) continue;
    if (r.abs_error->is_zero()) throw DomainError("rate_report: exact hit at n = " + std::to_string(r.n));
    pts.emplace_back(static_cast<double>(r.n), log10(*r.abs_error).to_double());
  }
  if (pts.size() < 5) throw InvalidArgument("measured", "need at least 5 records with a nonzero error");
  std::size_t keep = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(pts.size())));
  keep = std::max<std::size_t>(keep, std::min<std::size_t>(pts.size(), 5));
  pts.erase(pts.begin(), pts.end() - static_cast<std::ptrdiff_t>(keep));

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0) throw InvalidArgument("measured", "records need distinct n");

  RateSummary out;
  out.factor = report.c_inverse;
  out.rate_constant = prediction.rate_constant;
  out.predicted_slope = log10(report.c_inverse).to_double();
  out.measured_slope = (n * sxy - sx * sy) / denom;
  out.relative_deviation = std::abs(out.measured_slope - out.predicted_slope) / std::abs(out.predicted_slope);
  out.points_used = pts.size();
  return out;
}

/// Smallest n from which every record satisfies
/// |value - L| <= factor * rate_constant * (c^-1)^n. Records must carry a
/// zero offset. Records whose bound is below the error bar of L cannot be
/// judged and are skipped. Empty when the last judged record violates the bound.
inline std::optional<std::uint64_t> bound_burn_in(const std::vector<ApproximationRecord>& records,
                                                  const LimitPrediction& prediction,
                                                  const ConvergenceReport& report, long factor = 2) {
  std::optional<std::uint64_t> start;
  const Real::Bits bits = report.precision_bits;
  for (const auto& r : records) {
    if (!r.available) continue;
    const Real dev = abs(Complex(Real(r.value, bits)) - prediction.limit);
    const Real bound = prediction.rate_constant * pow(report.c_inverse, r.exponent) * factor;
    if (bound <= prediction.limit_error * 16L) continue;
    if (dev <= bound) {
      if (!start) start = r.n;
    } else {
      start.reset();
    }
  }
  return start;
}

struct WeightSearchResult {
  std::vector<long> x;
  ConvergenceReport report;
};

/// Best integer weights in [-bound, bound]^m making `target` (a canonical
/// root index) dominant, ranked by c. Roots are computed once.
inline std::optional<WeightSearchResult> search_dominant_weights(const Polynomial& f, std::size_t target, long bound,
                                                                 Real::Bits bits = 256) {
  const std::size_t m = f.degree();
  if (target >= m) throw InvalidArgument("target", "root index out of range");
  if (bound < 1) throw InvalidArgument("bound", "must be at least 1");
  const auto roots = all_roots(f, bits);
  std::optional<WeightSearchResult> best;
  std::vector<long> x(m, -bound);
  while (true) {
    bool nonzero = false;
    for (long v : x) nonzero = nonzero || v != 0;
    if (nonzero) {
      std::vector<Rational> w(x.begin(), x.end());
      auto rep = analyze_with_roots(roots, Weights(std::move(w)), bits);
      if (rep.certified && rep.dominant == target && (!best || rep.c_value > best->report.c_value))
        best = WeightSearchResult{x, std::move(rep)};
    }
    std::size_t pos = 0;
    while (pos < m && x[pos] == bound) x[pos++] = -bound;
    if (pos == m) break;
    ++x[pos];
  }
  return best;
}

}  // namespace regapprox
