#include <gtest/gtest.h>

#include "support.hpp"

using namespace regapprox;
namespace ts = testing_support;

namespace {

RegRepMatrix ramanujan(std::vector<long> x) {
  return build(parse_polynomial("c:1,1,-2,-1"), Weights(std::vector<Rational>(x.begin(), x.end())));
}

}  // namespace

TEST(Powers, MatPowAgreesWithNaiveProducts) {
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = static_cast<std::size_t>(ts::uniform(1, 4));
    Polynomial f(ts::random_vector(m, 4));
    std::vector<Rational> x;
    for (std::size_t i = 0; i < m; ++i) x.push_back(ts::frac(ts::uniform(-5, 5), ts::uniform(1, 3)));
    bool nonzero = false;
    for (const auto& v : x) nonzero = nonzero || v != 0;
    if (!nonzero) x[0] = 1;
    auto mm = build(f, Weights(x));
    const auto n = static_cast<std::uint64_t>(ts::uniform(0, 25));
    EXPECT_EQ(ts::to_table(mat_pow(mm, n).entries), ts::naive_power(ts::to_table(mm.entries), n));
  }
}

TEST(Powers, MatPowIsTheRepresentationOfXToTheN) {
  // M(x)^n = M(x^n) where x^n is computed by the multiplication oracle.
  auto f = parse_polynomial("u:1,-3,2,5");
  std::vector<Rational> x{2, -1, 0, 1};
  std::vector<Rational> xn{1, 0, 0, 0};
  for (int n = 1; n <= 8; ++n) {
    auto mx = ts::multiplication_matrix(f, x);
    std::vector<Rational> next(4, Rational(0));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) next[i] += mx[i][j] * xn[j];
    xn = next;
    EXPECT_EQ(ts::to_table(mat_pow(build(f, Weights(x)), n).entries), ts::multiplication_matrix(f, xn));
  }
}

TEST(Powers, RatioSequenceMatchesTableOneRow) {
  auto f = parse_polynomial("c:1,1,-2,-1");
  auto root = refiner_for(f, all_roots(f).roots[0]);
  auto recs = ratio_sequence(ramanujan({0, -1, 1}), {{2, 1}, {3, 1}, Rational(-1)}, {50, 5, 20, 5}, &root);
  ASSERT_EQ(recs.size(), 3u);  // sorted, duplicate dropped
  EXPECT_EQ(recs[0].n, 5u);
  EXPECT_EQ(recs[0].value, Rational(-1429, 793));
  EXPECT_EQ(recs[0].abs_error->to_sci(2), "8.0e-5");
  EXPECT_EQ(recs[2].abs_error->to_sci(2), "4.4e-45");
  for (const auto& r : recs) EXPECT_GE(r.den_digits, r.reduced_den_digits);
}

TEST(Powers, RatioSequenceValuesAreEntryQuotients) {
  auto m = ramanujan({1, -1, 1});
  auto recs = ratio_sequence(m, {{2, 2}, {2, 1}, Rational(0)}, {1, 2, 3, 4, 5, 6, 7});
  for (const auto& r : recs) {
    auto p = ts::naive_power(ts::to_table(m.entries), r.n);
    ASSERT_TRUE(r.available);
    EXPECT_EQ(r.value, p[1][1] / p[1][0]);
    EXPECT_FALSE(r.abs_error.has_value());
  }
}

TEST(Powers, ZeroDenominatorsAreMarked) {
  // M = A for x = (0,1,0); A^1 has a zero at (1,1).
  auto m = build(parse_polynomial("c:1,1,-2,-1"), Weights({0, 1, 0}));
  auto recs = ratio_sequence(m, {{2, 1}, {1, 1}, Rational(0)}, {1, 2, 3});
  EXPECT_FALSE(recs[0].available);
  EXPECT_FALSE(recs[1].available);
  EXPECT_TRUE(recs[2].available);
  EXPECT_THROW(ratio_sequence(m, {{2, 1}, {1, 1}, Rational(0)}, {1, 2}), DomainError);
}

TEST(Powers, IndexValidationNamesTheParameter) {
  auto m = ramanujan({0, 0, 1});
  try {
    ratio_sequence(m, {{4, 1}, {3, 1}, Rational(0)}, {1});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_EQ(e.parameter(), "num");
  }
  EXPECT_THROW(ratio_sequence(m, {{2, 1}, {0, 1}, Rational(0)}, {1}), InvalidArgument);
}

TEST(Powers, AcceleratedSchedules) {
  auto m = ramanujan({69, 99, -124});
  RatioSpec spec{{2, 1}, {3, 1}, Rational(0)};
  auto arith = accelerated_sequence(m, 3, spec, 5, Schedule::Arithmetic);
  auto plain = ratio_sequence(m, spec, {3, 6, 9, 12, 15});
  for (std::size_t t = 0; t < 5; ++t) {
    EXPECT_EQ(arith[t].n, t + 1);
    EXPECT_EQ(arith[t].exponent, plain[t].n);
    EXPECT_EQ(arith[t].value, plain[t].value);
  }
  auto geo = accelerated_sequence(m, 3, spec, 4, Schedule::Geometric);
  auto plain_geo = ratio_sequence(m, spec, {3, 9, 27, 81});
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_EQ(geo[t].exponent, plain_geo[t].n);
    EXPECT_EQ(geo[t].value, plain_geo[t].value);
  }
  EXPECT_THROW(accelerated_sequence(m, 0, spec, 2), InvalidArgument);
}

TEST(Powers, ConstantRatiosEqualUm) {
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = static_cast<std::size_t>(ts::uniform(2, 5));
    Polynomial f(ts::random_vector(m, 4));
    if (f.u(m) == 0) continue;
    auto report = constant_ratio_check(build(f, Weights(ts::random_vector(m, 4))), 20);
    for (const auto& e : report.entries) {
      if (e.skipped || !e.constant) continue;
      EXPECT_TRUE(e.constant_over_range);
      // M_{1,m} = u_m M_{m,m-1} and M_{1,2} = u_m M_{m,1}
      EXPECT_EQ(*e.constant * f.u(m), 1);
    }
  }
}

TEST(Powers, ConstantRatioSkipsCoincidentPatternForQuadratics) {
  auto report = constant_ratio_check(build(parse_polynomial("u:1,1"), Weights({1, 1})), 10);
  EXPECT_TRUE(report.entries[0].constant_over_range);
  EXPECT_TRUE(report.entries[1].skipped);
}
