#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "regapprox/polynomial.hpp"
#include "regapprox/real.hpp"

namespace regapprox {

struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& t) const { return lo <= t && t <= hi; }
};

struct RootEstimate {
  Complex center;
  Real radius;
  bool is_real = false;
  /// Position in the canonical ordering (0-based).
  std::size_t index = 0;
  /// Exact isolating interval, present for certified real roots.
  std::optional<RationalInterval> bracket;
};

/// All m roots, ordered by descending modulus, then descending real part,
/// then descending imaginary part.
struct RootSet {
  std::vector<RootEstimate> roots;
  Polynomial source;
};

inline bool is_squarefree(const Polynomial& f) {
  auto p = f.as_poly();
  return gcd(p, p.derivative()).degree() == 0;
}

namespace detail {

inline int sign_of(const Rational& q) { return sgn(q); }

/// Sturm chain p0 = f, p1 = f', p_{k+1} = -rem(p_{k-1}, p_k).
class SturmChain {
 public:
  explicit SturmChain(const Polynomial& f) {
    chain_.push_back(f.as_poly());
    chain_.push_back(chain_.back().derivative());
    while (!chain_.back().is_zero() && chain_.back().degree() > 0) {
      auto r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
      if (r.is_zero()) break;
      chain_.push_back(-r);
    }
  }

  int variations(const Rational& t) const {
    int count = 0;
    int last = 0;
    for (const auto& p : chain_) {
      int s = sign_of(p(t));
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  /// Number of distinct real roots in (a, b].
  int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

 private:
  std::vector<RationalPoly> chain_;
};

/// Strict bound on the modulus of every root: 1 + max |u_i|.
inline Rational cauchy_bound(const Polynomial& f) {
  Rational b(0);
  for (const auto& v : f.u_vector()) b = std::max(b, Rational(abs(v)));
  return b + 1;
}

inline Rational floor_dyadic(const Rational& q, unsigned long bits) {
  Integer num = q.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), bits);
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  Rational out(fl);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), bits);
  return out;
}

inline Rational ceil_dyadic(const Rational& q, unsigned long bits) {
  Integer num = q.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), bits);
  Integer cl;
  mpz_cdiv_q(cl.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  Rational out(cl);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), bits);
  return out;
}

/// Smallest k with 2^-k <= w (w > 0).
inline unsigned long bits_below(const Rational& w) {
  long k = static_cast<long>(mpz_sizeinbase(w.get_den().get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(w.get_num().get_mpz_t(), 2)) + 1;
  return static_cast<unsigned long>(std::max(k, 0L));
}

/// Taylor coefficients b_s of f(c + h) = sum b_s h^s.
inline std::vector<Rational> taylor_at(const Polynomial& f, const Rational& c) {
  const std::size_t m = f.degree();
  std::vector<Rational> a;
  for (std::size_t s = 0; s <= m; ++s) a.push_back(f.coefficient(s));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = m; j-- > i;) a[j] += c * a[j + 1];
  return a;
}

inline Real::Bits bits_for_eps(const Rational& eps) {
  return static_cast<Real::Bits>(bits_below(eps)) + 64;
}

}  // namespace detail

/// Disjoint rational intervals, ascending, each isolating exactly one real root.
/// Endpoints are never roots, except for degenerate intervals [r, r] which
/// only arise from refinement and never from isolation.
inline std::vector<RationalInterval> isolate_real_roots(const Polynomial& f) {
  if (!is_squarefree(f)) throw DomainError("isolate_real_roots: polynomial is not squarefree");
  detail::SturmChain sturm(f);
  const Rational bound = detail::cauchy_bound(f);
  std::vector<RationalInterval> out;

  struct Pending {
    Rational lo, hi;
    int count;
  };
  std::vector<Pending> stack{{-bound, bound, sturm.count(-bound, bound)}};
  while (!stack.empty()) {
    Pending cur = stack.back();
    stack.pop_back();
    if (cur.count == 0) continue;
    if (cur.count == 1) {
      out.push_back({cur.lo, cur.hi});
      continue;
    }
    // Split off the midpoint; nudge it if it happens to be a root.
    Rational mid = (cur.lo + cur.hi) / 2;
    Rational step = (cur.hi - cur.lo) / 64;
    while (f.eval(mid) == 0) mid += step, step /= 2;
    stack.push_back({mid, cur.hi, sturm.count(mid, cur.hi)});
    stack.push_back({cur.lo, mid, sturm.count(cur.lo, mid)});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  return out;
}

/// Certified refinement of one simple real root. Holds the current bracket so
/// repeated requests for more digits continue where the last one stopped.
class RealRootRefiner {
 public:
  RealRootRefiner(Polynomial f, RationalInterval bracket) : f_(std::move(f)), bracket_(std::move(bracket)) {
    if (bracket_.lo > bracket_.hi) std::swap(bracket_.lo, bracket_.hi);
    if (bracket_.lo == bracket_.hi) {
      if (f_.eval(bracket_.lo) != 0) throw DomainError("refine_real_root: point interval is not a root");
      return;
    }
    int sa = detail::sign_of(f_.eval(bracket_.lo));
    int sb = detail::sign_of(f_.eval(bracket_.hi));
    if (sa == 0) {
      bracket_.hi = bracket_.lo;
    } else if (sb == 0) {
      bracket_.lo = bracket_.hi;
    } else if (sa == sb) {
      throw DomainError("refine_real_root: no sign change on the input interval");
    }
    sign_lo_ = sa;
  }

  const Polynomial& polynomial() const { return f_; }
  const RationalInterval& bracket() const { return bracket_; }
  std::size_t steps() const { return steps_; }

  /// Shrinks the bracket until its half-width is at most eps.
  /// Each step at least halves the width.
  void refine(const Rational& eps) {
    if (eps <= 0) throw InvalidArgument("eps", "must be positive");
    while (bracket_.width() > 2 * eps) step();
  }

  RootEstimate estimate(Real::Bits bits) const {
    RootEstimate est;
    const Rational mid = bracket_.midpoint();
    est.center = Complex(Real(mid, bits));
    // Radius rounded up, covering the conversion error of the center.
    Rational slack = bracket_.width() / 2 + abs(mid - est.center.re.to_rational());
    est.radius = Real(0L, bits);
    mpfr_set_q(est.radius.get(), slack.get_mpq_t(), MPFR_RNDU);
    est.is_real = true;
    est.bracket = bracket_;
    return est;
  }

  /// High-precision center of a bracket refined to half-width <= eps.
  Real value(const Rational& eps) {
    refine(eps);
    return Real(bracket_.midpoint(), detail::bits_for_eps(eps));
  }

 private:
  void step() {
    ++steps_;
    const Rational old_width = bracket_.width();
    const Rational c = centre();
    auto b = detail::taylor_at(f_, c);
    if (b[0] == 0) {
      bracket_ = {c, c};
      return;
    }
    // f'(c + h) for |h| <= r lies in [b1 - R, b1 + R].
    const Rational r = std::max(c - bracket_.lo, bracket_.hi - c);
    Rational spread(0);
    Rational rp = r;
    for (std::size_t s = 2; s < b.size(); ++s) {
      spread += static_cast<long>(s) * abs(b[s]) * rp;
      rp *= r;
    }
    const Rational dlo = b[1] - spread;
    const Rational dhi = b[1] + spread;
    bool newton_done = false;
    if (sgn(dlo) == sgn(dhi) && sgn(dlo) != 0) {
      Rational q1 = b[0] / dlo;
      Rational q2 = b[0] / dhi;
      Rational nlo = c - std::max(q1, q2);
      Rational nhi = c - std::min(q1, q2);
      if (nlo == nhi) {
        bracket_ = {nlo, nhi};
        return;
      }
      nlo = std::max(nlo, bracket_.lo);
      nhi = std::min(nhi, bracket_.hi);
      if (nlo <= nhi) {
        // Outward rounding to a dyadic grid keeps the rationals small.
        unsigned long k = detail::bits_below(nhi - nlo) + 4;
        nlo = std::max(detail::floor_dyadic(nlo, k), bracket_.lo);
        nhi = std::min(detail::ceil_dyadic(nhi, k), bracket_.hi);
        bracket_ = {nlo, nhi};
        newton_done = true;
      }
    }
    if (!newton_done || bracket_.width() * 2 > old_width) bisect();
  }

  void bisect() {
    const Rational c = centre();
    int sc = detail::sign_of(f_.eval(c));
    if (sc == 0) {
      bracket_ = {c, c};
    } else if (sc == sign_lo_) {
      bracket_.lo = c;
    } else {
      bracket_.hi = c;
    }
  }

  /// Dyadic point near the midpoint, strictly inside the bracket.
  Rational centre() const {
    Rational mid = bracket_.midpoint();
    unsigned long k = detail::bits_below(bracket_.width()) + 3;
    Rational d = detail::floor_dyadic(mid, k);
    return (d > bracket_.lo && d < bracket_.hi) ? d : mid;
  }

  Polynomial f_;
  RationalInterval bracket_;
  int sign_lo_ = 0;
  std::size_t steps_ = 0;
};

inline RootEstimate refine_real_root(const Polynomial& f, const RationalInterval& interval, const Rational& eps) {
  RealRootRefiner refiner(f, interval);
  refiner.refine(eps);
  return refiner.estimate(detail::bits_for_eps(eps));
}

/// |value - root|, with the oracle refined until its own uncertainty is at
/// least 2^40 times smaller than the reported distance. The refinement depth
/// doubles from `min_bits` until that holds.
inline Real distance_to_root(const Rational& value, RealRootRefiner& root, Real::Bits min_bits = 128) {
  const auto& f = root.polynomial();
  if (root.bracket().contains(value) && f.eval(value) == 0) return Real(0L, 64);
  Real::Bits bits = min_bits;
  while (true) {
    Rational eps(1);
    mpq_div_2exp(eps.get_mpq_t(), eps.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
    root.refine(eps);
    const auto& br = root.bracket();
    Rational d = abs(value - br.midpoint());
    Rational half = br.width() / 2;
    if (half == 0 || d > half * Rational(Integer(1) << 40)) return Real(d, 128);
    bits *= 2;
  }
}

struct AllRootsOptions {
  Real::Bits ceiling_bits = 1 << 15;
  int max_iterations_per_level = 500;
};

namespace detail {

inline Complex horner(const std::vector<Real>& asc, const Complex& z) {
  Complex acc(0L, z.precision());
  for (auto it = asc.rbegin(); it != asc.rend(); ++it) {
    acc = acc * z;
    acc.re += *it;
  }
  return acc;
}

/// Canonical order: |z| descending, then Re descending, then Im descending.
/// Values closer than their combined radii compare as ties on that key.
inline bool canonical_before(const RootEstimate& a, const RootEstimate& b) {
  Real tol = a.radius + b.radius;
  Real ma = abs(a.center), mb = abs(b.center);
  if (abs(ma - mb) > tol) return ma > mb;
  if (abs(a.center.re - b.center.re) > tol) return a.center.re > b.center.re;
  return a.center.im > b.center.im;
}

}  // namespace detail

/// Simultaneous (Aberth) approximation of all roots, each wrapped with the
/// inclusion radius m |f(z)| / |f'(z)|. Precision doubles from 64 bits until
/// every radius is below 2^(-precision_bits/2) and the disks are disjoint.
inline RootSet all_roots(const Polynomial& f, Real::Bits precision_bits = 256, AllRootsOptions opts = {}) {
  if (precision_bits < 64) precision_bits = 64;
  if (!is_squarefree(f)) throw DomainError("all_roots: polynomial is not squarefree (repeated roots)");
  const std::size_t m = f.degree();
  const auto intervals = isolate_real_roots(f);
  const int real_count = static_cast<int>(intervals.size());

  Real::Bits bits = 64;
  // Perturbed points on the circle of radius 1 + max|u_i|.
  const Real bound(detail::cauchy_bound(f), bits);
  std::vector<Complex> z;
  {
    Real two_pi = Real::pi(bits) * 2L;
    for (std::size_t j = 0; j < m; ++j) {
      Real angle = two_pi * static_cast<long>(j) / static_cast<long>(m) + Real::from_string("0.4", bits);
      Real scale = bound * (Real(1L, bits) + Real(static_cast<long>(j), bits) / 1000L);
      z.emplace_back(scale * cos(angle), scale * sin(angle));
    }
  }

  while (true) {
    std::vector<Real> coeffs, dcoeffs;
    for (std::size_t s = 0; s <= m; ++s) coeffs.emplace_back(f.coefficient(s), bits);
    for (std::size_t s = 1; s <= m; ++s) dcoeffs.emplace_back(f.coefficient(s) * static_cast<long>(s), bits);
    for (auto& v : z) v = Complex(v.re.with_precision(bits), v.im.with_precision(bits));

    const Real tiny = Real::pow2(-(bits - 8), bits);
    if (m == 1) {
      z[0] = Complex(Real(f.u(1), bits));
    } else {
      for (int it = 0; it < opts.max_iterations_per_level; ++it) {
        Real biggest(0L, bits);
        for (std::size_t j = 0; j < m; ++j) {
          Complex fz = detail::horner(coeffs, z[j]);
          if (fz == 0) continue;
          Complex dz = detail::horner(dcoeffs, z[j]);
          Complex ratio = fz / dz;
          Complex sum(0L, bits);
          for (std::size_t k = 0; k < m; ++k)
            if (k != j) sum += Complex(Real(1L, bits)) / (z[j] - z[k]);
          Complex correction = ratio / (Complex(Real(1L, bits)) - ratio * sum);
          z[j] -= correction;
          Real size = abs(correction) / max(Real(1L, bits), abs(z[j]));
          if (size > biggest) biggest = size;
        }
        if (biggest <= tiny) break;
      }
    }

    // Inclusion radii, inflated by a bound on rounding error in evaluating f.
    std::vector<RootEstimate> est(m);
    bool ok = true;
    for (std::size_t j = 0; j < m; ++j) {
      Complex fz = detail::horner(coeffs, z[j]);
      Complex dz = detail::horner(dcoeffs, z[j]);
      Real mag = abs(z[j]) + 1L;
      Real rounding(0L, bits);
      Real pw(1L, bits);
      for (const auto& c : coeffs) {
        rounding += abs(c) * pw;
        pw *= mag;
      }
      rounding *= Real::pow2(-(bits - 2 * static_cast<long>(std::log2(m + 1.0)) - 4), bits);
      Real dz_abs = abs(dz);
      est[j].center = z[j];
      if (dz_abs.is_zero()) {
        ok = false;
        est[j].radius = Real(1L, bits);
      } else {
        est[j].radius = (abs(fz) + rounding) * static_cast<long>(m) / dz_abs;
      }
    }
    const Real target = Real::pow2(-(precision_bits / 2), bits);
    for (std::size_t j = 0; j < m && ok; ++j) {
      if (est[j].radius > target) ok = false;
      for (std::size_t k = j + 1; k < m && ok; ++k)
        if (abs(est[j].center - est[k].center) <= est[j].radius + est[k].radius) ok = false;
    }
    if (ok) {
      // Exactly real_count disks must touch the real axis; those are the real roots.
      std::vector<std::size_t> order(m);
      for (std::size_t j = 0; j < m; ++j) order[j] = j;
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return abs(est[a].center.im) < abs(est[b].center.im); });
      std::vector<std::size_t> real_idx(order.begin(), order.begin() + real_count);
      for (std::size_t r : real_idx)
        if (abs(est[r].center.im) > est[r].radius) ok = false;
      for (std::size_t r = static_cast<std::size_t>(real_count); r < m; ++r)
        if (abs(est[order[r]].center.im) <= est[order[r]].radius) ok = false;
      if (ok && bits >= precision_bits) {
        // Disjoint disks keep the real order, so they pair with the Sturm intervals.
        std::sort(real_idx.begin(), real_idx.end(),
                  [&](std::size_t a, std::size_t b) { return est[a].center.re < est[b].center.re; });
        Rational eps(1);
        mpq_div_2exp(eps.get_mpq_t(), eps.get_mpq_t(), static_cast<mp_bitcnt_t>(precision_bits - 8));
        for (std::size_t r = 0; r < real_idx.size(); ++r) {
          RealRootRefiner refiner(f, intervals[r]);
          refiner.refine(eps);
          est[real_idx[r]] = refiner.estimate(bits);
        }
      }
    }
    if (ok && bits >= precision_bits) {
      std::sort(est.begin(), est.end(), detail::canonical_before);
      for (std::size_t j = 0; j < m; ++j) est[j].index = j;
      return RootSet{std::move(est), f};
    }
    const Real::Bits ceiling = std::max(opts.ceiling_bits, precision_bits);
    if (bits >= ceiling)
      throw DomainError("all_roots: could not separate roots below the precision ceiling (near-multiple roots?)");
    bits = std::min<Real::Bits>(bits * 2, ceiling);
  }
}

/// Refiner continuing from the certified bracket of a real root estimate.
inline RealRootRefiner refiner_for(const Polynomial& f, const RootEstimate& estimate) {
  if (!estimate.is_real || !estimate.bracket) throw DomainError("refiner_for: root is not a certified real root");
  return RealRootRefiner(f, *estimate.bracket);
}

}  // namespace regapprox
