#include <gtest/gtest.h>

#include "support.hpp"

using namespace regapprox;
namespace ts = testing_support;

TEST(RegRep, RamanujanCubicByHand) {
  // x = (0,-1,1) on t^3 + t^2 - 2t - 1: M = A^2 - A with A the companion matrix.
  auto m = build(parse_polynomial("c:1,1,-2,-1"), Weights({0, -1, 1}));
  const ts::Table expected{{0, 1, -2}, {-1, 2, -3}, {1, -2, 4}};
  EXPECT_EQ(ts::to_table(m.entries), expected);
}

TEST(RegRep, UnitWeightGivesIdentity) {
  auto m = build(parse_polynomial("u:3,-1,7"), Weights({1, 0, 0}));
  EXPECT_EQ(ts::to_table(m.entries), ts::naive_power(ts::to_table(m.entries), 0));
}

TEST(RegRep, ArityAndZeroWeightsRejected) {
  auto f = parse_polynomial("u:1,2,3");
  EXPECT_THROW(build(f, Weights({1, 2})), InvalidArgument);
  EXPECT_THROW(Weights({0, 0, 0}), InvalidArgument);
  EXPECT_THROW(Weights(std::vector<Rational>{}), InvalidArgument);
}

TEST(RegRep, MatchesMultiplicationOracle) {
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = static_cast<std::size_t>(ts::uniform(1, 5));
    Polynomial f(ts::random_vector(m, 5));
    auto x = ts::random_vector(m, 6);
    EXPECT_EQ(ts::to_table(build(f, Weights(x)).entries), ts::multiplication_matrix(f, x));
  }
}

TEST(RegRep, FirstColumnIsX) {
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = static_cast<std::size_t>(ts::uniform(1, 5));
    Polynomial f(ts::random_vector(m, 5));
    auto x = ts::random_vector(m, 6);
    auto e = build(f, Weights(x)).entries;
    for (std::size_t i = 0; i < m; ++i) EXPECT_EQ(e(i, 0), x[i]);
  }
}

TEST(RegRep, FormulaAndCubicClosedFormAgreeWithBuild) {
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = static_cast<std::size_t>(ts::uniform(1, 5));
    Polynomial f(ts::random_vector(m, 4));
    Weights x(ts::random_vector(m, 5));
    EXPECT_EQ(ts::to_table(entries_via_formula(f, x).entries), ts::to_table(build(f, x).entries));
  }
  for (int trial = 0; trial < 30; ++trial) {
    auto u = ts::random_vector(3, 6, true);
    auto x = ts::random_vector(3, 6);
    auto closed = build_cubic(u[0], u[1], u[2], x[0], x[1], x[2]);
    EXPECT_EQ(ts::to_table(closed.entries), ts::to_table(build(Polynomial(u), Weights(x)).entries));
  }
}

TEST(RegRep, MultinomialEntriesMatchCompanionPowers) {
  auto f = parse_polynomial("u:2,-1,3,1");
  auto a = ts::to_table(companion(f).entries);
  for (std::size_t n = 0; n <= 9; ++n) {
    auto an = ts::naive_power(a, n);
    for (std::size_t i = 1; i <= 4; ++i)
      for (std::size_t j = 1; j <= 4; ++j) EXPECT_EQ(entry_multinomial(f, i, j, n), an[i - 1][j - 1]);
  }
}

TEST(RegRep, HomomorphismAndLinearity) {
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = static_cast<std::size_t>(ts::uniform(2, 5));
    auto f = ts::random_squarefree(m, 4);
    Weights x(ts::random_vector(m, 5)), y(ts::random_vector(m, 5));
    auto mx = build(f, x).entries, my = build(f, y).entries;
    // M(x) M(y) = M(xy); products commute.
    try {
      auto xy = multiply_elements(f, x, y);
      EXPECT_EQ(ts::to_table(mx * my), ts::to_table(build(f, xy).entries));
    } catch (const DomainError&) {
      EXPECT_EQ(ts::to_table(mx * my), ts::zero_table(m));
    }
    EXPECT_EQ(ts::to_table(mx * my), ts::to_table(my * mx));

    const Rational a(ts::uniform(-4, 4)), b(ts::uniform(-4, 4));
    std::vector<Rational> combo;
    for (std::size_t i = 0; i < m; ++i) combo.push_back(a * x[i] + b * y[i]);
    bool nonzero = false;
    for (const auto& v : combo) nonzero = nonzero || v != 0;
    if (!nonzero) continue;
    auto lhs = ts::to_table(build(f, Weights(combo)).entries);
    auto rx = ts::to_table(mx), ry = ts::to_table(my);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) EXPECT_EQ(lhs[i][j], a * rx[i][j] + b * ry[i][j]);
  }
}

TEST(RegRep, ReducibleFProductMayVanish) {
  // (t-1)(t+1): (a-1)(a+1) = 0 in Q[t]/(f).
  auto f = parse_polynomial("c:1,0,-1");
  EXPECT_THROW(multiply_elements(f, Weights({-1, 1}), Weights({1, 1})), DomainError);
}
