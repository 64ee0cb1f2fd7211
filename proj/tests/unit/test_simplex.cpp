#include <gtest/gtest.h>

#include "orthant/simplex.hpp"
#include "support/oracles.hpp"

using namespace orthant;

namespace {

LpProblem<Rational> nonneg_problem(Vec<Rational> objective, Mat<Rational> a, Vec<Rational> b) {
  LpProblem<Rational> p{std::move(objective), std::move(a), std::move(b), {}};
  p.lower_bounds.assign(p.objective.size(), Rational(0));
  return p;
}

}  // namespace

TEST(Simplex, SmallOptimal) {
  const auto p = nonneg_problem({1}, Mat<Rational>::from_rows({{1}}), {1});
  const auto r = solve(p);
  ASSERT_TRUE(std::holds_alternative<LpOptimal<Rational>>(r));
  const auto& o = std::get<LpOptimal<Rational>>(r);
  EXPECT_EQ(o.x, Vec<Rational>{1});
  EXPECT_EQ(o.value, Rational(1));
  EXPECT_TRUE(verify(p, r));
}

TEST(Simplex, SmallInfeasible) {
  const auto p = nonneg_problem({0}, Mat<Rational>::from_rows({{1}}), {-1});
  const auto r = solve(p);
  ASSERT_TRUE(std::holds_alternative<LpInfeasible<Rational>>(r));
  EXPECT_TRUE(verify(p, r));
}

TEST(Simplex, SmallUnbounded) {
  const auto p = nonneg_problem({1}, Mat<Rational>(0, 1), {});
  const auto r = solve(p);
  ASSERT_TRUE(std::holds_alternative<LpUnbounded<Rational>>(r));
  EXPECT_TRUE(verify(p, r));
}

TEST(Simplex, FreeAndShiftedVariables) {
  // max -x0 - x1 s.t. x0 - x1 = 3, x0 free, x1 >= -2 → x1 = -2, x0 = 1.
  LpProblem<Rational> p{{-1, -1}, Mat<Rational>::from_rows({{1, -1}}), {3}, {std::nullopt, Rational(-2)}};
  const auto r = solve(p);
  ASSERT_TRUE(std::holds_alternative<LpOptimal<Rational>>(r));
  EXPECT_EQ(std::get<LpOptimal<Rational>>(r).x, (Vec<Rational>{1, -2}));
  EXPECT_TRUE(verify(p, r));
}

TEST(Simplex, RedundantRowsKeepValidDuals) {
  const auto p = nonneg_problem({1, 2}, Mat<Rational>::from_rows({{1, 1}, {2, 2}}), {1, 2});
  const auto r = solve(p);
  ASSERT_TRUE(std::holds_alternative<LpOptimal<Rational>>(r));
  EXPECT_EQ(std::get<LpOptimal<Rational>>(r).value, Rational(2));
  EXPECT_TRUE(verify(p, r));
}

TEST(Simplex, DegenerateCyclingCandidate) {
  // Beale's example in equality form with slacks.
  const auto a = Mat<Rational>::from_rows({{Rational(1, 4), -8, -1, 9, 1, 0, 0},
                                           {Rational(1, 2), -12, Rational(-1, 2), 3, 0, 1, 0},
                                           {0, 0, 1, 0, 0, 0, 1}});
  const auto p = nonneg_problem({Rational(3, 4), -20, Rational(1, 2), -6, 0, 0, 0}, a, {0, 0, 1});
  const auto r = solve(p);
  ASSERT_TRUE(std::holds_alternative<LpOptimal<Rational>>(r));
  EXPECT_EQ(std::get<LpOptimal<Rational>>(r).value, Rational(5, 4));
  EXPECT_TRUE(verify(p, r));
}

TEST(Simplex, RandomProblemsAreCertified) {
  oracle::Random rng(3);
  int kinds[3] = {0, 0, 0};
  for (int trial = 0; trial < 300; ++trial) {
    const auto rows = static_cast<std::size_t>(rng.integer(0, 4));
    const auto cols = static_cast<std::size_t>(rng.integer(1, 5));
    Mat<Rational> a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a(i, j) = rng.rational(-3, 3, 2);
    Vec<Rational> b(rows), c(cols);
    for (auto& x : b) x = rng.rational(-3, 3, 2);
    for (auto& x : c) x = rng.rational(-2, 2, 2);
    LpProblem<Rational> p{c, a, b, {}};
    for (std::size_t j = 0; j < cols; ++j)
      p.lower_bounds.push_back(rng.integer(0, 4) == 0 ? std::nullopt : std::optional<Rational>(rng.rational(-1, 1, 2)));
    const auto r = solve(p);
    ++kinds[r.index()];
    EXPECT_TRUE(verify(p, r)) << "trial " << trial;
  }
  EXPECT_GT(kinds[0], 20);
  EXPECT_GT(kinds[1], 20);
  EXPECT_GT(kinds[2], 5);
}

TEST(Simplex, FloatBackendMatchesExact) {
  LpProblem<Real> p{{1, 1}, Mat<Real>::from_rows({{1, 2}}), {4}, {Real(0), Real(0)}};
  const auto r = solve(p);
  ASSERT_TRUE(std::holds_alternative<LpOptimal<Real>>(r));
  EXPECT_NEAR(std::get<LpOptimal<Real>>(r).value.value(), 4.0, 1e-12);
  EXPECT_TRUE(verify(p, r));
}

TEST(Simplex, RejectsInconsistentShapes) {
  LpProblem<Rational> p{{1, 1}, Mat<Rational>::from_rows({{1}}), {1}, {Rational(0), Rational(0)}};
  EXPECT_THROW(solve(p), ShapeMismatch);
}
