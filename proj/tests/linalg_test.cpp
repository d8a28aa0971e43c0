#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "samplers.hpp"
#include "porth/linalg.hpp"
#include "porth/lp.hpp"

using namespace porth;

namespace {

LpProblem nonneg_problem(Vector obj, std::vector<LinearConstraint> ineq) {
  LpProblem p;
  p.objective = std::move(obj);
  p.inequalities = std::move(ineq);
  return p;
}

}  // namespace

TEST(SolveLp, SimplexFaceOptimum) {
  auto out = solve_lp(nonneg_problem({1, 1}, {{{1, 1}, 1}}));
  ASSERT_EQ(out.status, LpStatus::optimal);
  EXPECT_NEAR(out.optimum, 1.0, 1e-12);
}

TEST(SolveLp, ContradictoryBoundsAreInfeasible) {
  auto out = solve_lp(nonneg_problem({1}, {{{1}, -1}}));
  EXPECT_EQ(out.status, LpStatus::infeasible);
}

TEST(SolveLp, BoxVertex) {
  auto out = solve_lp(nonneg_problem({2, 3}, {{{1, 0}, 2}, {{0, 1}, 1}}));
  ASSERT_EQ(out.status, LpStatus::optimal);
  EXPECT_NEAR(out.optimum, 7.0, 1e-12);
  EXPECT_NEAR(out.argument[0], 2.0, 1e-12);
  EXPECT_NEAR(out.argument[1], 1.0, 1e-12);
}

TEST(SolveLp, UnboundedDetected) {
  auto out = solve_lp(nonneg_problem({1, 0}, {{{0, 1}, 1}}));
  EXPECT_EQ(out.status, LpStatus::unbounded);
}

TEST(SolveLp, FreeVariablesAndEqualities) {
  // max -|x| style: x free, x = -3 fixed by equality
  LpProblem p;
  p.objective = {1.0, -1.0};
  p.equalities = {{{1.0, 0.0}, -3.0}};
  p.inequalities = {{{0.0, 1.0}, 5.0}};
  p.lower_bounds = {std::nullopt, -2.0};
  auto out = solve_lp(p);
  ASSERT_EQ(out.status, LpStatus::optimal);
  EXPECT_NEAR(out.argument[0], -3.0, 1e-12);
  EXPECT_NEAR(out.argument[1], -2.0, 1e-12);
  EXPECT_NEAR(out.optimum, -1.0, 1e-12);
}

TEST(SolveLp, RedundantEqualitiesAreTolerated) {
  LpProblem p;
  p.objective = {1.0, 1.0};
  p.equalities = {{{1.0, 1.0}, 2.0}, {{2.0, 2.0}, 4.0}};
  auto out = solve_lp(p);
  ASSERT_EQ(out.status, LpStatus::optimal);
  EXPECT_NEAR(out.optimum, 2.0, 1e-12);
}

TEST(SolveLp, MalformedDimensionsRejected) {
  EXPECT_THROW(solve_lp(nonneg_problem({1, 1}, {{{1}, 1}})), InputError);
  LpProblem p;
  EXPECT_THROW(solve_lp(p), InputError);
}

TEST(SolveLp, BuilderMinimizeReportsOptimumInRequestedSense) {
  LpBuilder b;
  auto x = b.add_var(std::nullopt);
  b.add_ge(LinExpr::var(x), 2.5);
  LinExpr obj = LinExpr::var(x);
  obj.constant = 1.0;
  b.minimize(obj);
  auto out = b.solve();
  ASSERT_EQ(out.status, LpStatus::optimal);
  EXPECT_NEAR(out.optimum, 3.5, 1e-12);
}

TEST(SolveLp, MatchesVertexEnumerationOnRandomBoundedProblems) {
  std::mt19937_64 rng(20240517);
  for (int trial = 0; trial < 200; ++trial) {
    const auto lp = fixtures::random_bounded_lp(rng);
    const auto p = lp.problem();
    auto out = solve_lp(p);
    auto expect = oracle::vertex_enumeration_max(lp.c, lp.rows, lp.rhs);
    ASSERT_TRUE(expect.has_value());
    ASSERT_EQ(out.status, LpStatus::optimal);
    EXPECT_NEAR(out.optimum, *expect, 1e-8) << "trial " << trial;
    EXPECT_LE(lp_violation(p, out.argument), 1e-9);
  }
}

TEST(EigenSym, Identity) {
  auto sd = eigen_sym(Matrix::identity(3));
  for (double l : sd.eigenvalues) EXPECT_NEAR(l, 1.0, 1e-14);
}

TEST(EigenSym, DiagonalSortedDescending) {
  auto sd = eigen_sym(Matrix::diagonal({-2.0, 5.0}));
  EXPECT_NEAR(sd.eigenvalues[0], 5.0, 1e-14);
  EXPECT_NEAR(sd.eigenvalues[1], -2.0, 1e-14);
}

TEST(EigenSym, TwoByTwoCharacteristicRoots) {
  // roots of l^2 - 4 l + 3
  auto sd = eigen_sym_rows({{2, 1}, {1, 2}});
  EXPECT_NEAR(sd.eigenvalues[0], 3.0, 1e-12);
  EXPECT_NEAR(sd.eigenvalues[1], 1.0, 1e-12);
}

TEST(EigenSym, AsymmetricRejected) { EXPECT_THROW(eigen_sym_rows({{1, 2}, {0, 1}}), InputError); }

TEST(EigenSym, RandomInvariants) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 6;
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = g(rng);
    auto sd = eigen_sym(m);
    const double scale = 1.0 + m.max_abs();
    EXPECT_LE((sd.reconstruct() - m).max_abs(), 1e-9 * scale);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        EXPECT_NEAR(dot(sd.eigenvectors[i], sd.eigenvectors[j]), i == j ? 1.0 : 0.0, 1e-9);
    double tr = 0.0, sum = 0.0, prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
    for (double l : sd.eigenvalues) {
      sum += l;
      prod *= l;
    }
    EXPECT_NEAR(sum, tr, 1e-9 * scale * n);
    if (n <= 3) {
      const double det = determinant(m);
      EXPECT_NEAR(prod, det, 1e-8 * std::max(1.0, std::abs(det)));
    }
    for (std::size_t i = 1; i < n; ++i) EXPECT_GE(sd.eigenvalues[i - 1], sd.eigenvalues[i]);
  }
}

TEST(Linalg, RankAndLeastSquares) {
  EXPECT_EQ(rank_of({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}), 2u);
  EXPECT_EQ(rank_of({{1, 2}, {3, 4}}), 2u);
  auto c = least_squares_coefficients({{1, 0, 0}, {0, 0, 2}}, {3, 0, 4});
  EXPECT_NEAR(c[0], 3.0, 1e-12);
  EXPECT_NEAR(c[1], 2.0, 1e-12);
}
