#include <gtest/gtest.h>

#include <random>

#include "porth/cones.hpp"

using namespace porth;

namespace {

ConeSpec diamond() { return ConeSpec::rays({{1, 1}, {1, -1}}); }

}  // namespace

TEST(Cones, RayMembership) {
  EXPECT_TRUE(cone_contains(diamond(), {2, 0}));
  EXPECT_FALSE(cone_contains(diamond(), {0, 2}));
  EXPECT_TRUE(cone_contains(diamond(), {0, 0}));
  EXPECT_TRUE(cone_contains(diamond(), {3, -3}));
  EXPECT_FALSE(cone_contains(diamond(), {1, 1.01}));
}

TEST(Cones, DualMembership) {
  EXPECT_TRUE(dual_cone_contains(diamond(), {1, -1}));
  EXPECT_FALSE(dual_cone_contains(ConeSpec::orthant(2), {1, -0.5}));
  EXPECT_TRUE(dual_cone_contains(ConeSpec::orthant(2), {1, 0}));
  EXPECT_FALSE(dual_cone_contains(diamond(), {0, 1}));
}

TEST(Cones, PsdMembership) {
  const auto c = ConeSpec::psd(2);
  EXPECT_TRUE(cone_contains(c, {1, 1, 1, 1}));
  EXPECT_FALSE(cone_contains(c, {1, 2, 2, 1}));
  EXPECT_FALSE(cone_contains(c, {1, 0.5, 0, 1}));
  EXPECT_TRUE(dual_cone_contains(c, {2, 0, 0, 0}));
}

TEST(Cones, ProperGenerating) {
  auto r = cone_proper_generating(diamond());
  EXPECT_TRUE(r.proper);
  EXPECT_TRUE(r.generating);
  r = cone_proper_generating(ConeSpec::rays({{1, 0}, {-1, 0}, {0, 1}}));
  EXPECT_FALSE(r.proper);
  EXPECT_TRUE(r.generating);
  r = cone_proper_generating(ConeSpec::rays({{1, 0, 0}, {0, 1, 0}}));
  EXPECT_TRUE(r.proper);
  EXPECT_FALSE(r.generating);
  r = cone_proper_generating(ConeSpec::orthant(5));
  EXPECT_TRUE(r.proper && r.generating);
}

TEST(Cones, MalformedInput) {
  EXPECT_THROW(ConeSpec::rays({}), InputError);
  EXPECT_THROW(ConeSpec::rays({{1, 0}, {1}}), InputError);
  EXPECT_THROW(ConeSpec::rays({{0, 0}}), InputError);
  EXPECT_THROW(cone_contains(ConeSpec::orthant(2), {1, 2, 3}), InputError);
  EXPECT_THROW(ConeSpec::psd(2).finite_generators(), UnsupportedError);
}

// A proper cone never holds both x and -x for x != 0.
TEST(ConeProperties, ProperNoLine) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  const std::vector<ConeSpec> cones = {ConeSpec::orthant(4), diamond(),
                                       ConeSpec::rays({{1, 1, 1}, {1, -1, 1}, {1, 1, -1}, {1, -1, -1}}),
                                       ConeSpec::psd(3)};
  for (const auto& c : cones) {
    ASSERT_TRUE(cone_proper_generating(c).proper);
    for (int k = 0; k < 250; ++k) {
      Vector x(c.ambient_dim);
      for (auto& v : x) v = nd(rng);
      if (c.kind == ConeKind::psd) x = symmetric_matrix(x, c.side).flat();
      EXPECT_FALSE(cone_contains(c, x) && cone_contains(c, -x));
    }
  }
}

// f in the dual cone iff f is nonnegative on sampled members of the cone.
TEST(ConeProperties, DualityPairing) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const auto c = ConeSpec::rays({{1, 1, 1}, {1, -1, 1}, {1, 1, -1}, {1, -1, -1}});
  for (int k = 0; k < 500; ++k) {
    Vector f(3);
    for (auto& v : f) v = nd(rng);
    Vector x(3, 0.0);
    for (const auto& g : c.generators) x = axpy(x, ud(rng), g);
    ASSERT_TRUE(cone_contains(c, x));
    if (dual_cone_contains(c, f)) {
      EXPECT_GE(dot(f, x), -1e-9);
    }
    double worst = 1e300;
    for (const auto& g : c.generators) worst = std::min(worst, dot(f, g));
    EXPECT_EQ(dual_cone_contains(c, f, 0.0), worst >= 0.0);
  }
}

TEST(ConeProperties, PsdDualPairing) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> nd;
  const auto c = ConeSpec::psd(3);
  for (int k = 0; k < 200; ++k) {
    Matrix a(3, 3), b(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        a(i, j) = nd(rng);
        b(i, j) = nd(rng);
      }
    const Matrix x = a * a.transpose();
    const Matrix f = b * b.transpose();
    EXPECT_TRUE(cone_contains(c, x.flat()));
    EXPECT_TRUE(dual_cone_contains(c, f.flat()));
    EXPECT_GE(dot(x.flat(), f.flat()), -1e-9);
  }
}
