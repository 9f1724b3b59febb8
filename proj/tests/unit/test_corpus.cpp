#include <gtest/gtest.h>

#include "support.hpp"
#include "qtorsion/classify.hpp"

using namespace qtorsion;

TEST(Corpus, ListsEveryExample) {
  const auto names = example_names();
  for (const char* want :
       {"s3xt9", "s3xt4m1", "qheis", "t3h3-a", "t3h3-b", "t3mk3-a", "t3mk3-b", "torus", "salamon"})
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  for (const auto& name : names) EXPECT_FALSE(example_description(name).empty());
  EXPECT_EQ(example_defaults("torus").at("n"), 3.0);
}

TEST(Corpus, UnknownNamesAndParametersRejected) {
  EXPECT_THROW(build_example("nonesuch"), std::invalid_argument);
  EXPECT_THROW(build_example("torus", {{"m", 2}}), std::invalid_argument);
  EXPECT_THROW(build_example("torus", {{"n", 1}}), std::invalid_argument);
  EXPECT_THROW(run_scenario("nonesuch"), std::invalid_argument);
}

TEST(Corpus, ParametersChangeTheModel) {
  EXPECT_EQ(build_example("s3xt4m1", {{"m", 2}}).dim(), 12);
  EXPECT_EQ(build_example("torus", {{"n", 2}}).dim(), 8);
  const AqhModel k1 = build_example("t3mk3-a", {{"k", 1}}), k2 = build_example("t3mk3-a", {{"k", 2}});
  EXPECT_GT((k1.algebra().d_basis(2) - k2.algebra().d_basis(2)).max_abs(), 0.5);
}

TEST(Corpus, EveryModelIsALieAlgebraWithAdaptedTriple) {
  for (const auto& in : support::all_instances()) {
    const AqhModel m = build_example(in.name, in.params);
    EXPECT_LT(m.algebra().jacobi_defect(), 1e-12) << support::describe(in);
    EXPECT_LT(m.triple().defect(), 1e-12) << support::describe(in);
    EXPECT_TRUE(m.algebra().unimodular()) << support::describe(in);
  }
}

TEST(Corpus, GoldenExpectationsHold) {
  for (const auto& in : support::all_instances()) {
    const Analysis an = analyze(build_example(in.name, in.params));
    const auto checks = example_checks(in.name, in.params, an);
    EXPECT_FALSE(checks.empty());
    support::expect_checks_pass(checks, support::describe(in));
  }
}

TEST(Corpus, IdentitySuiteHoldsOnEveryModel) {
  for (const auto& in : support::all_instances()) {
    const Analysis an = analyze(build_example(in.name, in.params));
    support::expect_checks_pass(identity_checks(an), support::describe(in));
    if (an.qkt.is_qkt) support::expect_checks_pass(an.qkt.checks, support::describe(in));
  }
}

TEST(Corpus, EveryScenarioPassesItsChecks) {
  for (const auto& name : scenario_names()) {
    EXPECT_FALSE(scenario_description(name).empty());
    for (const ScenarioResult& r : run_scenario(name)) {
      EXPECT_FALSE(r.checks.empty()) << r.name;
      support::expect_checks_pass(r.checks, r.name);
      support::expect_checks_pass(identity_checks(r.after), r.name + " after");
      if (r.after.qkt.is_qkt) support::expect_checks_pass(r.after.qkt.checks, r.name + " after");
    }
  }
}

TEST(CorpusProperty, IdentitySuiteHoldsAfterRandomPerturbation) {
  std::mt19937 rng(51);
  const auto instances = support::all_instances();
  for (int trial = 0; trial < 30; ++trial) {
    const auto& in = instances[trial % instances.size()];
    const Analysis an = analyze(support::perturbed(build_example(in.name, in.params), rng));
    support::expect_checks_pass(identity_checks(an), "perturbed " + support::describe(in));
  }
}

TEST(CorpusProperty, NijenhuisFromDerivativesMatchesBrackets) {
  std::mt19937 rng(52);
  const auto instances = support::all_instances();
  for (int trial = 0; trial < 100; ++trial) {
    const auto& in = instances[trial % instances.size()];
    const AqhModel m = support::perturbed(build_example(in.name, in.params), rng);
    const ExteriorData x = exterior_data(m);
    for (int a = 0; a < 3; ++a) {
      const Tensor oracle_n = nijenhuis_oracle(m, a);
      ASSERT_LT((nijenhuis_from_dw(x, a) - oracle_n).max_abs(), 1e-10) << support::describe(in);
      ASSERT_LT((nijenhuis_from_dw_alt(x, a) - oracle_n).max_abs(), 1e-10) << support::describe(in);
    }
  }
}

TEST(CorpusProperty, LabelsInvariantUnderOrthonormalRelabelling) {
  // Changing the coframe by P and conjugating the triple by the same P describes the same structure.
  std::mt19937 rng(53);
  for (const auto& in : support::all_instances()) {
    const AqhModel m = build_example(in.name, in.params);
    const Analysis base = analyze(m);
    const Endomorphism p = oracle::random_orthogonal(rng, m.dim());
    const Analysis moved = analyze(AqhModel(m.algebra().transformed(p), m.triple().conjugated(p)));
    EXPECT_EQ(moved.report.label, base.report.label) << support::describe(in);
    for (int a = 0; a < 3; ++a) EXPECT_EQ(moved.gh[a].label, base.gh[a].label) << support::describe(in);
    EXPECT_EQ(moved.hkt.is_hkt, base.hkt.is_hkt) << support::describe(in);
    EXPECT_EQ(moved.qkt.is_qkt, base.qkt.is_qkt) << support::describe(in);
  }
}
