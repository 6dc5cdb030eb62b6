#include <gtest/gtest.h>

#include "support.hpp"

using namespace regapprox;
namespace ts = testing_support;

TEST(Roots, RamanujanCubicAgainstCosines) {
  const Real::Bits bits = 300;
  auto rs = all_roots(parse_polynomial("c:1,1,-2,-1"), bits);
  auto oracle = ts::ramanujan_roots(bits);  // 1.247, -0.445, -1.802
  ASSERT_EQ(rs.roots.size(), 3u);
  // Canonical order is by descending modulus: -1.80, 1.25, -0.45.
  const Real* expected[] = {&oracle[2], &oracle[0], &oracle[1]};
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_TRUE(rs.roots[k].is_real);
    EXPECT_EQ(rs.roots[k].index, k);
    EXPECT_LE(abs(rs.roots[k].center.re - *expected[k]), rs.roots[k].radius + Real::pow2(-280, bits));
    EXPECT_LE(rs.roots[k].radius, Real::pow2(-150, bits));
  }
}

TEST(Roots, ComplexPairsAndCanonicalOrder) {
  // t^3 - 2: one real root, one conjugate pair of equal modulus.
  auto rs = all_roots(parse_polynomial("u:0,0,2"));
  int real = 0;
  for (const auto& r : rs.roots) real += r.is_real;
  EXPECT_EQ(real, 1);
  // Equal moduli break ties by real part: the real root 2^(1/3) comes first.
  EXPECT_TRUE(rs.roots[0].is_real);
  EXPECT_GT(rs.roots[1].center.im, rs.roots[2].center.im);
}

TEST(Roots, RepeatedRootsRejected) {
  EXPECT_THROW(all_roots(parse_polynomial("c:1,-2,1")), DomainError);
}

TEST(Roots, IsolationCountsAgreeWithGridScan) {
  for (int trial = 0; trial < 40; ++trial) {
    auto f = ts::random_squarefree(static_cast<std::size_t>(ts::uniform(1, 5)), 6);
    auto intervals = isolate_real_roots(f);
    // The grid can miss close pairs but never invents a root.
    EXPECT_GE(static_cast<int>(intervals.size()), ts::grid_sign_changes(f, 8.0, 40000));
    EXPECT_EQ(intervals.size() % 2, f.degree() % 2);
    for (const auto& iv : intervals) EXPECT_LE(f.eval(iv.lo) * f.eval(iv.hi), 0);
  }
}

TEST(Roots, KnownIntegerRoots) {
  // (t-1)(t+2)(t-3)(t+4) = t^4 + 2t^3 - 13t^2 - 14t + 24
  auto f = parse_polynomial("c:1,2,-13,-14,24");
  auto rs = all_roots(f);
  const long expected[] = {-4, 3, -2, 1};
  for (std::size_t k = 0; k < 4; ++k) {
    ASSERT_TRUE(rs.roots[k].is_real);
    EXPECT_LE(abs(rs.roots[k].center.re - Real(expected[k], 256)), rs.roots[k].radius);
  }
}

TEST(Roots, VietaWithinRadii) {
  for (int trial = 0; trial < 30; ++trial) {
    auto f = ts::random_squarefree(static_cast<std::size_t>(ts::uniform(2, 5)), 5);
    auto rs = all_roots(f, 200);
    Complex sum(0L, 200), prod(1L, 200);
    Real slack(0L, 200);
    Real bound(1L, 200);
    for (const auto& r : rs.roots) {
      sum += r.center;
      prod *= r.center;
      slack += r.radius;
      bound *= abs(r.center) + r.radius;
    }
    // sum = u_1, product = (-1)^(m+1) u_m
    const std::size_t m = f.degree();
    EXPECT_LE(abs(sum - Complex(Real(f.u(1), 200))), slack + Real::pow2(-180, 200));
    Rational p = (m % 2 == 1) ? f.u(m) : Rational(-f.u(m));
    EXPECT_LE(abs(prod - Complex(Real(p, 200))), bound * slack + Real::pow2(-180, 200));
  }
}

TEST(Roots, RefinerKeepsSignChangeAndHalves) {
  auto f = parse_polynomial("c:1,1,-2,-1");
  RealRootRefiner r(f, {Rational(-2), Rational(-1)});
  Rational width = r.bracket().width();
  Rational eps(1);
  for (int k = 0; k < 12; ++k) {
    eps /= 1000;
    r.refine(eps);
    EXPECT_LE(r.bracket().width(), 2 * eps);
    EXPECT_LE(f.eval(r.bracket().lo) * f.eval(r.bracket().hi), 0);
    EXPECT_LE(r.bracket().width(), width);
    width = r.bracket().width();
  }
  EXPECT_THROW(RealRootRefiner(f, {Rational(2), Rational(3)}), DomainError);
}

TEST(Roots, RefinerConvergesQuadratically) {
  // 1e-3000 in far fewer steps than bisection would need (about 10^4).
  auto f = parse_polynomial("c:1,1,-2,-1");
  RealRootRefiner r(f, {Rational(-2), Rational(-1)});
  Rational eps(1);
  mpq_div_2exp(eps.get_mpq_t(), eps.get_mpq_t(), 10000);
  r.refine(eps);
  EXPECT_LT(r.steps(), 200u);
}

TEST(Roots, DistanceToRootMatchesOracle) {
  auto f = parse_polynomial("c:1,1,-2,-1");
  auto rs = all_roots(f);
  auto root = refiner_for(f, rs.roots[0]);
  auto oracle = ts::ramanujan_roots(600)[2];
  const Rational q(-1429, 793);
  Real d = distance_to_root(q, root);
  Real expected = abs(Real(q, 600) - oracle);
  EXPECT_LE(abs(d - expected), expected * Real::pow2(-30, 128));
  EXPECT_EQ(d.to_sci(2), "8.0e-5");
}

TEST(Roots, ExactRationalRootHasZeroDistance) {
  auto f = parse_polynomial("c:1,-5,6");
  RealRootRefiner r(f, {Rational(5, 2), Rational(7, 2)});
  EXPECT_TRUE(distance_to_root(Rational(3), r).is_zero());
}
