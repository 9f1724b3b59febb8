#include <gtest/gtest.h>

#include "support.hpp"
#include "qtorsion/multilinear.hpp"
#include "qtorsion/transforms.hpp"

using namespace qtorsion;
using support::expect_form;

namespace {

// Random combination of the closed coframe one-forms.
Form random_closed_one_form(const LieAlgebra& g, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Form out(g.dim(), 1);
  for (int k = 0; k < g.dim(); ++k)
    if (g.d_basis(k).empty()) out += Form::basis(g.dim(), {k}, u(rng));
  return out;
}

Vec unit(int dim, int k) { return oracle::unit(dim, k); }

Analysis conformal(const Analysis& an, const std::string& dsigma, const Variables& v = {}) {
  return analyze(conformal_data(an.x, support::parse_for(an, dsigma, 1, v)), an.names);
}

}  // namespace

TEST(Conformal, ZeroChangeIsIdentity) {
  const Analysis an = analyze(build_example("t3h3-a"));
  const Analysis after = conformal(an, "0");
  EXPECT_EQ(after.report.label, an.report.label);
  const TorsionReport shifted = conformal_shift(an.model->algebra(), an.x.triple, Form(12, 1), an.report);
  for (int a = 0; a < 3; ++a) EXPECT_LT((shifted.beta.beta[a] - an.report.beta.beta[a]).max_abs(), 1e-15);
}

TEST(Conformal, NonClosedChangeRejected) {
  const Analysis an = analyze(build_example("s3xt9"));
  EXPECT_THROW(conformal_shift(an.model->algebra(), an.x.triple, support::parse_for(an, "a1", 1), an.report),
               std::invalid_argument);
}

TEST(Conformal, HktExampleToKhType) {
  for (double m : {1.0, 2.0}) {
    const Analysis an = analyze(build_example("s3xt4m1", {{"m", m}}));
    const Variables v{{"n", m + 1}};
    const Analysis after = conformal(an, "-1/(2*n+1)*a1", v);
    EXPECT_EQ(after.report.label, "KH");
    expect_form(after, "theta", "0");
    expect_form(after, "theta_I", "0");
    expect_form(after, "Alambda_I", "-2/(2*n+1)*a1", v);
    expect_form(after, "nu3_I", "-4/(2*n+1)*a1", v);
    expect_form(after, "nu4_I", "-8*n/(2*n+1)*a1", v);
  }
}

TEST(Conformal, HktExampleToBalanced) {
  for (double m : {1.0, 2.0}) {
    const Analysis an = analyze(build_example("s3xt4m1", {{"m", m}}));
    const Variables v{{"n", m + 1}};
    const Analysis after = conformal(an, "-1/(2*n-1)*a1", v);
    expect_form(after, "lee_I", "0");
    expect_form(after, "theta", "1/(2*(4*n*n-1))*a1", v);
    EXPECT_EQ(after.report.label, "KH + EH");
  }
}

TEST(Conformal, SphereTimesNineTorusGainsEh) {
  const Analysis an = analyze(build_example("s3xt9"));
  EXPECT_EQ(conformal(an, "a2").report.label, "Λ³₀E S³H + KH + EH");
}

TEST(ConformalProperty, ShiftMatchesRecomputationAndKeepsNonEhFlags) {
  std::mt19937 rng(31);
  for (const auto& in : support::all_instances()) {
    const Analysis an = analyze(build_example(in.name, in.params));
    const Form ds = random_closed_one_form(an.model->algebra(), rng);
    const Analysis after = analyze(conformal_data(an.x, ds), an.names);
    const TorsionReport shifted = conformal_shift(an.model->algebra(), an.x.triple, ds, an.report);
    for (int c = 0; c < 5; ++c) EXPECT_EQ(after.report.flags[c], an.report.flags[c]) << support::describe(in);
    EXPECT_LT((shifted.theta - after.report.theta).max_abs(), 1e-10) << support::describe(in);
    for (int a = 0; a < 3; ++a) {
      EXPECT_LT((shifted.beta.nu3[a] - after.report.beta.nu3[a]).max_abs(), 1e-10) << support::describe(in);
      EXPECT_LT((shifted.beta.nu4[a] - after.report.beta.nu4[a]).max_abs(), 1e-10) << support::describe(in);
      EXPECT_LT((shifted.lambda[a] - after.report.lambda[a]).max_abs(), 1e-10) << support::describe(in);
      EXPECT_LT((shifted.beta.beta[a] - after.report.beta.beta[a]).max_abs(), 1e-10) << support::describe(in);
    }
  }
}

TEST(DecomposeCurvature, KaehlerFormIsPureS2H) {
  const AqhModel m = build_example("torus", {{"n", 2}});
  const TwistData d = decompose_curvature(m, kaehler_form(m.triple(), kI), Vec(8, 0.0), 1.0);
  EXPECT_NEAR(d.mu[kI], 1.0, 1e-12);
  EXPECT_NEAR(d.mu[kJ], 0.0, 1e-12);
  EXPECT_NEAR(d.mu[kK], 0.0, 1e-12);
  EXPECT_LT(d.alpha.max_abs(), 1e-12);
  for (int a = 0; a < 3; ++a) EXPECT_LT(d.kappa_form[a].max_abs(), 1e-12);
}

TEST(DecomposeCurvature, SalamonCurvatureIsPureS2E) {
  const AqhModel m = build_example("salamon");
  const Analysis an = analyze(m);
  const Form F = support::parse_for(an, "a1^a3 + a2^a4", 2);
  const TwistData d = decompose_curvature(m, F, unit(8, 6), 1.0);
  for (int a = 0; a < 3; ++a) {
    EXPECT_NEAR(d.mu[a], 0.0, 1e-12);
    EXPECT_LT(d.kappa_form[a].max_abs(), 1e-12);
  }
  EXPECT_LT((d.alpha - F).max_abs(), 1e-12);
}

TEST(DecomposeCurvature, TorusCurvatureOfTypeK) {
  const AqhModel m = build_example("torus", {{"n", 3}});
  const Analysis an = analyze(m);
  const Form F = support::parse_for(an, "a2^a1 + a4^a3 - a6^a5 - a8^a7", 2);
  const TwistData d = decompose_curvature(m, F, unit(12, 8), 1.0);
  for (int a = 0; a < 3; ++a) EXPECT_NEAR(d.mu[a], 0.0, 1e-12);
  EXPECT_LT(d.alpha.max_abs(), 1e-12);
  EXPECT_LT((d.kappa_form[kI] - F).max_abs(), 1e-12);
  support::expect_checks_pass(curvature_checks(m, d), "torus κ");
}

TEST(DecomposeCurvature, PreconditionsEnforced) {
  const AqhModel m = build_example("salamon");
  const Analysis an = analyze(m);
  // d(a2) ≠ 0 on this algebra.
  EXPECT_THROW(decompose_curvature(m, support::parse_for(an, "a2^a3", 2), Vec(8, 0.0), 1.0), std::invalid_argument);
  EXPECT_THROW(decompose_curvature(m, support::parse_for(an, "a1^a3", 2), unit(8, 0), 1.0), std::invalid_argument);
  EXPECT_THROW(decompose_curvature(m, support::parse_for(an, "a1^a3", 2), Vec(8, 0.0), 0.0), std::invalid_argument);
}

TEST(DecomposeCurvatureProperty, RandomClosedFormsReconstruct) {
  std::mt19937 rng(41);
  const AqhModel m = build_example("torus", {{"n", 2}});
  for (int trial = 0; trial < 100; ++trial) {
    const Form F = oracle::dense_random_form(rng, 8, 2);
    const TwistData d = decompose_curvature(m, F, Vec(8, 0.0), 1.0);
    Form sum = d.alpha;
    for (int a = 0; a < 3; ++a) sum += kaehler_form(m.triple(), a) * d.mu[a] + d.kappa_form[a];
    ASSERT_LT((sum - F).max_abs(), 1e-11);
    support::expect_checks_pass(curvature_checks(m, d), "random F");
  }
}

TEST(Twist, ZeroCurvatureIsIdentity) {
  const AqhModel m = build_example("s3xt9");
  const TwistData d = decompose_curvature(m, Form(12, 2), unit(12, 1), 1.0);
  const AqhModel w = twist(m, d);
  for (int k = 0; k < 12; ++k) EXPECT_LT((w.algebra().d_basis(k) - m.algebra().d_basis(k)).max_abs(), 1e-15);
}

TEST(Twist, SalamonTwistGainsKh) {
  const AqhModel m = build_example("salamon");
  const Analysis before = analyze(m);
  const TwistData d = decompose_curvature(m, support::parse_for(before, "a1^a3 + a2^a4", 2), unit(8, 6), 1.0);
  const AqhModel w = twist(m, d);
  EXPECT_LT(w.algebra().jacobi_defect(), 1e-12);
  const Analysis after = analyze(w);
  EXPECT_EQ(before.report.label, "K S³H");
  EXPECT_EQ(after.report.label, "K S³H + KH");
  support::expect_checks_pass(twist_invariance_check(before.x, before.report, after.x, after.report, d), "salamon");
}

TEST(Twist, TorusTwistOfTypeK) {
  const AqhModel m = build_example("torus", {{"n", 3}});
  const Analysis before = analyze(m);
  const Form F = support::parse_for(before, "a2^a1 + a4^a3 - a6^a5 - a8^a7", 2);
  const TwistData d = decompose_curvature(m, F, unit(12, 8), 1.0);
  const Analysis after = analyze(twist(m, d));
  EXPECT_EQ(after.report.label, "Λ³₀E S³H + K S³H + Λ³₀EH + KH");
  support::expect_checks_pass(twist_invariance_check(before.x, before.report, after.x, after.report, d), "torus");
}

TEST(Twist, PredictionsMatchRecomputation) {
  const AqhModel m = build_example("salamon");
  const Analysis before = analyze(m);
  const TwistData d = decompose_curvature(m, support::parse_for(before, "a1^a3 + a2^a4", 2), unit(8, 6), 2.0);
  const Analysis after = analyze(twist(m, d));
  const TwistPrediction p = predict_twist(before.x, before.report, d);
  for (int a = 0; a < 3; ++a) {
    EXPECT_LT((p.beta[a] - after.report.beta.beta[a]).max_abs(), 1e-10);
    EXPECT_LT((p.nu3[a] - after.report.beta.nu3[a]).max_abs(), 1e-10);
    EXPECT_LT((p.nu4[a] - after.report.beta.nu4[a]).max_abs(), 1e-10);
    EXPECT_LT((p.beta3[a] - after.report.beta.beta3[a]).max_abs(), 1e-10);
    EXPECT_LT((p.betaK[a] - after.report.beta.betaK[a]).max_abs(), 1e-10);
  }
}

TEST(SkewConnection, SphereTimesNineTorusRecipe) {
  const Analysis an = analyze(build_example("s3xt9"));
  EXPECT_FALSE(an.qkt.is_qkt);
  const SkewConnectionResult r = skew_connection_check(an.x, skew_torsion_candidate(an.report.beta));
  EXPECT_TRUE(r.ok);
  EXPECT_LT(r.residual, 1e-10);
  EXPECT_FALSE(skew_connection_check(an.x, an.report.beta.beta[kI]).ok);
}

TEST(SkewConnection, TorsionOfHktAndFlatStructures) {
  const Analysis h = analyze(build_example("s3xt4m1"));
  const SkewConnectionResult r = skew_connection_check(h.x, h.qkt.T);
  EXPECT_TRUE(r.ok);
  for (int a = 0; a < 3; ++a) EXPECT_LT(r.gamma[a].max_abs(), 1e-10);
  const Analysis t = analyze(build_example("torus"));
  EXPECT_TRUE(skew_connection_check(t.x, Form(12, 3)).ok);
}
