#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "porth/harness.hpp"

using namespace porth;

namespace {

bool same_report(const SuiteReport& a, const SuiteReport& b) {
  if (a.samples != b.samples || a.passes != b.passes || a.notes != b.notes || a.metrics != b.metrics) return false;
  if (a.counterexamples.size() != b.counterexamples.size()) return false;
  for (std::size_t i = 0; i < a.counterexamples.size(); ++i) {
    const auto& x = a.counterexamples[i];
    const auto& y = b.counterexamples[i];
    if (x.input != y.input || x.residual != y.residual || x.location != y.location) return false;
  }
  return true;
}

}  // namespace

TEST(Sampling, ConeExamples) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = sample_cone(lp_space(2, 2.0), seed);
    EXPECT_GE(a[0], 0.0);
    EXPECT_GE(a[1], 0.0);
    const auto rays = base_space(ConeSpec::rays({{1, 1}, {1, -1}}), {1, 0});
    EXPECT_TRUE(cone_contains(rays.cone, sample_cone(rays, seed)));
    const auto m = sample_cone(spectral_space(2), seed);
    EXPECT_GE(min_eigenvalue(symmetric_matrix(m, 2)), -1e-12);
  }
}

TEST(Sampling, BoundaryHasCrust) {
  Rng rng(5);
  for (const auto& s : {sup_space(5), spectral_space(3), cube_space()}) {
    const Vector e = *order_unit_of(s);
    for (int t = 0; t < 30; ++t) {
      const Vector u = sample_boundary(s, e, rng);
      ASSERT_TRUE(cone_contains(s.cone, u));
      EXPECT_TRUE(crust_probe(s, u).has_value());
    }
  }
}

TEST(Sampling, OrderUnitPairsMatchConstruction) {
  Rng rng(9);
  for (const auto& s : {sup_space(6), spectral_space(3), cube_space()}) {
    const Vector e = *order_unit_of(s);
    for (int t = 0; t < 40; ++t) {
      const bool want = t % 2 == 0;
      const auto [u1, u2] = sample_order_unit_pair(s, e, want, rng);
      if (want) {
        EXPECT_TRUE(infty_positive_test(s, u1, u2, 1e-9));
      }
    }
  }
}

TEST(Sampling, BoxPairs) {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const bool want = t % 2 == 0;
    const auto [a, b] = box_pair(5, want, rng);
    EXPECT_EQ(norm_max(a), 1.0);
    EXPECT_EQ(norm_max(b), 1.0);
    bool below = true;
    for (std::size_t i = 0; i < 5; ++i) below = below && a[i] + b[i] <= 1.0;
    EXPECT_EQ(below, want);
  }
}

TEST(Example46, SmallGrid) {
  const auto ex = build_example_46(5);
  const double h = std::numbers::pi / 2;
  for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(ex.x[j], h * static_cast<double>(j), 1e-15);
  const Vector f{1, 0, -1, 0, 1}, fp{1, 0, 0, 0, 1}, fm{0, 0, 1, 0, 0};
  const Vector g1{1, 0.5, 0, 0.5, 1}, g2{0, 0.5, 1, 0.5, 0};
  for (std::size_t j = 0; j < 5; ++j) {
    EXPECT_NEAR(ex.f[j], f[j], 1e-15);
    EXPECT_NEAR(ex.fplus[j], fp[j], 1e-15);
    EXPECT_NEAR(ex.fminus[j], fm[j], 1e-15);
    EXPECT_NEAR(ex.g1[j], g1[j], 1e-15);
    EXPECT_NEAR(ex.g2[j], g2[j], 1e-15);
    EXPECT_EQ(ex.g1[j] + ex.g2[j], 1.0);
  }
  EXPECT_EQ(ex.fplus - ex.fminus, ex.f);
  EXPECT_EQ(ex.g1 - ex.g2, ex.f);
  EXPECT_THROW(build_example_46(2), InputError);
}

TEST(Example46, ExactNormsOnDefaultGrid) {
  const auto ex = build_example_46(kExample46Grid);
  const auto& s = ex.space;
  EXPECT_EQ(norm(s, ex.fplus), 1.0);
  EXPECT_EQ(norm(s, ex.fminus), 1.0);
  EXPECT_EQ(norm(s, ex.fplus + ex.fminus), 1.0);
  EXPECT_EQ(norm(s, ex.g1 + ex.g2), 1.0);
  EXPECT_EQ(norm(s, ex.g1), 1.0);
  EXPECT_EQ(norm(s, ex.g2), 1.0);
}

TEST(Example46, SuiteReportsGap) {
  const auto r = run_suite(SuiteId::ex46_nonuniqueness, sup_space(3), 1, 1e-9, 0);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.passes, r.samples);
  EXPECT_NEAR(r.metrics.at("max_gap"), 0.5, 1e-12);
  EXPECT_EQ(r.space.dim, kExample46Grid);
}

TEST(Statements, SupPlaneExamples) {
  const auto s = sup_space(2);
  const auto a = infty_statements(s, {1, 0}, {0, 1}, 1e-9);
  EXPECT_TRUE(a.s1 && a.s2 && a.s3);
  const auto b = infty_statements(s, {1, 0.5}, {0, 1}, 1e-9);
  EXPECT_FALSE(b.s1 || b.s2 || b.s3);
  EXPECT_DOUBLE_EQ(b.norm_sum, 1.5);
}

TEST(Harness, CatalogueIsComplete) {
  for (std::size_t i = 0; i < kSuites.size(); ++i) {
    EXPECT_EQ(static_cast<std::size_t>(kSuites[i].id), i);
    EXPECT_EQ(parse_suite_id(kSuites[i].name), kSuites[i].id);
  }
  EXPECT_FALSE(parse_suite_id("thm99").has_value());
  // every suite applies to at least one default family
  for (const auto& info : kSuites) {
    bool any = false;
    for (const auto& fam : default_families()) any = any || suite_supports(info.id, fam.space);
    EXPECT_TRUE(any) << info.name;
  }
}

TEST(Harness, PositivePairOnEuclidean) {
  const auto r = run_suite(SuiteId::lem27_positive_pair, lp_space(4, 2.0), 100, 1e-9, 1);
  EXPECT_EQ(r.passes, 100u);
  EXPECT_EQ(r.samples, 100u);
}

TEST(Harness, UnsupportedIsExplicit) {
  const auto r = run_suite(SuiteId::cor38_order_unit, lp_space(4, 2.0), 10, 1e-9, 1);
  EXPECT_EQ(r.status, SuiteStatus::unsupported);
  EXPECT_EQ(r.samples, 0u);
  EXPECT_FALSE(r.passed());
  const auto q = run_suite(SuiteId::thm41_one_orth, spectral_space(2), 10, 1e-9, 1);
  EXPECT_EQ(q.status, SuiteStatus::unsupported);
}

TEST(Harness, Deterministic) {
  for (auto id : {SuiteId::thm33_equivalence, SuiteId::def22_Op2, SuiteId::rem42_restriction}) {
    const auto fam = id == SuiteId::rem42_restriction ? lp_space(5, 1.0) : sup_space(5);
    const auto a = run_suite(id, fam, 40, 1e-8, 17);
    const auto b = run_suite(id, fam, 40, 1e-8, 17);
    EXPECT_TRUE(same_report(a, b)) << suite_name(id);
  }
  // the stream depends on the suite, not on what ran before
  const auto x = run_suite(SuiteId::def22_Op1, sup_space(4), 30, 1e-8, 3);
  (void)run_suite(SuiteId::def22_Op2, sup_space(4), 30, 1e-8, 3);
  const auto y = run_suite(SuiteId::def22_Op1, sup_space(4), 30, 1e-8, 3);
  EXPECT_TRUE(same_report(x, y));
}

TEST(Harness, CountsAddUp) {
  for (const auto& [fam, r] : run_all({20, kDefaultSuiteTol, 4, kExample46Grid})) {
    EXPECT_EQ(r.passes + r.counterexamples.size(), r.samples) << suite_name(r.suite) << " on " << fam;
    EXPECT_GT(r.samples, 0u) << suite_name(r.suite) << " on " << fam;
    EXPECT_TRUE(r.passed()) << suite_name(r.suite) << " on " << fam;
  }
}

// A space whose declared class is wrong must produce counterexamples.
TEST(Harness, DetectsWrongClass) {
  auto s = lp_space(4, 1.0);
  s.p_class = Exponent::infinity();
  const auto r = run_suite(SuiteId::def22_Op1, s, 200, 1e-8, 5);
  EXPECT_EQ(r.status, SuiteStatus::ok);
  EXPECT_FALSE(r.counterexamples.empty());
  EXPECT_EQ(r.passes + r.counterexamples.size(), r.samples);
  const auto& cx = r.counterexamples.front();
  EXPECT_EQ(cx.input.size(), 3u);
  EXPECT_GT(cx.residual, 0.0);
}

TEST(Harness, RejectsBadTolerance) {
  EXPECT_THROW(run_suite(SuiteId::def22_Op1, sup_space(2), 5, 0.0, 0), InputError);
}

TEST(DualMinimal, Examples) {
  // l1: dual is l_inf, parts f+ and f- with max(|f+|, |f-|) = |f|
  const auto d = dual_minimal_decompose(lp_space(3, 1.0), {2, -1, 0});
  ASSERT_TRUE(d.ok());
  EXPECT_EQ(d.u1, (Vector{2, 0, 0}));
  EXPECT_EQ(d.u2, (Vector{0, 1, 0}));
  EXPECT_DOUBLE_EQ(d.norm_aggregate, 2.0);
  // spectral: trace norms add up
  const auto s = spectral_space(2);
  const Vector f{1, 2, 2, -2};
  const auto e = dual_minimal_decompose(s, f);
  ASSERT_TRUE(e.ok());
  EXPECT_NEAR(e.norm_aggregate, dual_norm(s, f), 1e-12);
  EXPECT_NEAR(norm_max(e.u1 - e.u2 - f), 0.0, 1e-12);
}
