#include <gtest/gtest.h>

#include "support.hpp"
#include "qtorsion/classify.hpp"
#include "qtorsion/multilinear.hpp"

using namespace qtorsion;
using support::expect_form;

TEST(GhLabel, NamesClassesByTheirComponents) {
  EXPECT_EQ(gh_label(0), "Kähler");
  EXPECT_EQ(gh_label(kW3), "W_3");
  EXPECT_EQ(gh_label(kW1 | kW3), "W_{1+3}");
  EXPECT_EQ(gh_label(kW1 | kW2 | kW3 | kW4), "W_{1+2+3+4}");
}

TEST(ClassifyAqh, GoldenLabels) {
  EXPECT_EQ(analyze(build_example("torus")).report.label, "ξ = 0");
  EXPECT_EQ(analyze(build_example("qheis")).report.label, "Λ³₀EH + KH");
  EXPECT_EQ(analyze(build_example("t3mk3-a")).report.label, "K S³H + E S³H");
  EXPECT_EQ(classify_aqh(analyze(build_example("s3xt9")).report), "Λ³₀E S³H + KH");
}

TEST(ClassifyGh, HeisenbergIsBalancedOnAllStructures) {
  const Analysis an = analyze(build_example("qheis"));
  for (int a = 0; a < 3; ++a) {
    EXPECT_EQ(an.gh[a].label, "W_3");
    EXPECT_TRUE(an.gh[a].table_consistent);
  }
}

TEST(ClassifyGh, SolvableSecondStructureExcludesSmallerClasses) {
  for (double k : {1.0, 0.5, 2.0}) {
    const Analysis an = analyze(build_example("t3mk3-b", {{"k", k}}));
    for (int a = 0; a < 3; ++a) {
      EXPECT_EQ(an.gh[a].label, "W_{2+3}");
      EXPECT_GT(an.gh[a].nijenhuis.norm(), 1e-3);
      EXPECT_GT(an.x.domega[a].norm(), 1e-3);
      EXPECT_FALSE(gh_table_condition(an.x, an.gh[a].nijenhuis, a, kW2));
      EXPECT_FALSE(gh_table_condition(an.x, an.gh[a].nijenhuis, a, kW3));
    }
  }
}

TEST(ClassifyGh, SphereTimesNineTorusIsStrictlyW13) {
  const Analysis an = analyze(build_example("s3xt9"));
  for (int a = 0; a < 3; ++a) {
    EXPECT_EQ(an.gh[a].label, "W_{1+3}");
    // W_1 alone would need 4dω_A = -3A_(123)N_A, and W_3 alone N_A = 0.
    EXPECT_FALSE(gh_table_condition(an.x, an.gh[a].nijenhuis, a, kW1));
    EXPECT_FALSE(gh_table_condition(an.x, an.gh[a].nijenhuis, a, kW3));
    EXPECT_TRUE(gh_table_condition(an.x, an.gh[a].nijenhuis, a, kW1 | kW3));
  }
}

TEST(ClassifyGh, TableConditionConsistentOnEveryExample) {
  for (const auto& in : support::all_instances()) {
    const Analysis an = analyze(build_example(in.name, in.params));
    for (int a = 0; a < 3; ++a) {
      EXPECT_TRUE(an.gh[a].table_consistent) << support::describe(in) << " " << kStructureNames[a];
      // Every class containing the assigned one satisfies its row as well.
      for (GhClass c = 0; c < 16; ++c)
        if ((c & an.gh[a].cls) == an.gh[a].cls)
          EXPECT_TRUE(gh_table_condition(an.x, an.gh[a].nijenhuis, a, c)) << support::describe(in);
    }
  }
}

TEST(ClassifyGh, W234RowMeansAlternatedNijenhuisVanishes) {
  const Analysis an = analyze(build_example("t3h3-a"));
  for (int a = 0; a < 3; ++a) {
    EXPECT_EQ(an.gh[a].label, "W_{2+3+4}");
    EXPECT_LT(an.gh[a].nij_alt.max_abs(), 1e-12);
  }
}

TEST(HktCheck, GoldenVerdicts) {
  for (double m : {1.0, 2.0}) {
    const Analysis an = analyze(build_example("s3xt4m1", {{"m", m}}));
    EXPECT_TRUE(an.hkt.is_hkt);
    EXPECT_TRUE(an.hkt.alternative);
  }
  const Analysis torus = analyze(build_example("torus"));
  EXPECT_TRUE(torus.hkt.is_hkt);
  EXPECT_TRUE(torus.qkt.T.empty());
  const Analysis s = analyze(build_example("s3xt9"));
  EXPECT_FALSE(s.hkt.is_hkt);
  EXPECT_FALSE(s.hkt.alternative);
  EXPECT_GT((s.report.beta.beta[kI] - s.report.beta.beta[kJ]).norm(), 1e-3);
}

TEST(QktCheck, HktExampleSatisfiesEveryQktIdentity) {
  for (double m : {1.0, 2.0}) {
    const Analysis an = analyze(build_example("s3xt4m1", {{"m", m}}));
    ASSERT_TRUE(an.qkt.is_qkt);
    EXPECT_TRUE(an.qkt.is_hkt);
    expect_form(an, "t", "-2*a1");
    expect_form(an, "lee_I", "-2*a1");
    support::expect_checks_pass(an.qkt.checks, "s3xt4m1");
    // An HKT structure has a connection preserving each of I, J, K.
    for (int a = 0; a < 3; ++a) EXPECT_LT(an.qkt.gamma[a].max_abs(), 1e-10);
  }
}

TEST(QktCheck, NonQktInputNamesTheViolation) {
  const Analysis an = analyze(build_example("s3xt9"));
  EXPECT_FALSE(an.qkt.is_qkt);
  EXPECT_NE(an.qkt.violation.find("xi33"), std::string::npos);
  const Analysis torus = analyze(build_example("torus"));
  EXPECT_TRUE(torus.qkt.is_qkt);
  EXPECT_TRUE(torus.qkt.t.empty());
}

TEST(QktCheck, RemarkIdentitiesOnHktExamples) {
  const Analysis an = analyze(build_example("s3xt4m1", {{"m", 2}}));
  const double n = an.x.n;
  for (int a = 0; a < 3; ++a) {
    EXPECT_LT(an.report.beta.beta3[a].max_abs(), 1e-10);
    EXPECT_LT((an.report.beta.betaK[a] - an.report.beta.betaK[kI]).max_abs(), 1e-10);
    EXPECT_LT((an.report.beta.nu4[a] - an.qkt.t * 2.0).max_abs(), 1e-10);
    EXPECT_LT((an.report.beta.nu3[a] - an.qkt.t * (4.0 / (2.0 * n + 1.0))).max_abs(), 1e-10);
  }
}

TEST(KhTypeCheck, GoldenVerdicts) {
  EXPECT_TRUE(kh_type_check(analyze(build_example("s3xt9")).x));
  EXPECT_TRUE(kh_type_check(analyze(build_example("torus")).x));
  const Analysis a = analyze(build_example("t3h3-a"));
  EXPECT_FALSE(kh_type_check(a.x));
  EXPECT_GT(kh_type_defect(a.x), 1e-3);
}

TEST(ClassifyProperty, QktStructuresPassTheirIdentitiesAfterPerturbation) {
  // Rotating the triple inside its own span keeps an HKT structure HKT.
  std::mt19937 rng(21);
  for (int trial = 0; trial < 4; ++trial) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const double al = u(rng), be = u(rng);
    const std::array<double, 9> r{std::cos(al), -std::sin(al), 0, std::sin(al), std::cos(al), 0, 0, 0, 1};
    const std::array<double, 9> s{1, 0, 0, 0, std::cos(be), -std::sin(be), 0, std::sin(be), std::cos(be)};
    std::array<double, 9> rs{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) rs[3 * i + j] += r[3 * i + k] * s[3 * k + j];
    const AqhModel base = build_example("s3xt4m1");
    const Analysis an = analyze(AqhModel(base.algebra(), base.triple().rotated(rs)));
    EXPECT_TRUE(an.hkt.is_hkt);
    support::expect_checks_pass(an.qkt.checks, "rotated s3xt4m1");
  }
}
