#pragma once

#include <string>
#include <vector>

#include "qtorsion/analysis.hpp"
#include "qtorsion/check.hpp"
#include "qtorsion/formula.hpp"
#include "qtorsion/structure.hpp"

namespace qtorsion {

// The embedded example models, each with golden expectations stored as data.
std::vector<std::string> example_names();
std::string example_description(const std::string& name);
// Parameter names with their default values, e.g. {"m", 1}.
Variables example_defaults(const std::string& name);
// The parameter values exercised by the golden suite.
std::vector<Variables> example_sweep(const std::string& name);

// Throws std::invalid_argument for an unknown name or parameter.
AqhModel build_example(const std::string& name, const Variables& params = {});

// Golden expectations of an example against its analysis.
std::vector<Check> example_checks(const std::string& name, const Variables& params, const Analysis& an);

// Expected forms are written for I; J and K follow by the example's cyclic symmetry.
// `cycle` is "abc", "234" or "abc;234"; letters rotate a→b→c and positions 2→3→4 inside each
// quadruple. I→J→K and wI→wJ→wK rotate unless the cycle is "abc" alone, which is the rotation
// cyc(...) sums over.
std::string rotate_expression(const std::string& expr, const std::string& cycle);
std::string expand_cyc(const std::string& expr);

// Conformal changes and twists applied to examples.
struct ScenarioResult {
  std::string name;
  Analysis before;
  Analysis after;
  std::vector<Check> checks;
};
std::vector<std::string> scenario_names();
std::string scenario_description(const std::string& name);
std::vector<ScenarioResult> run_scenario(const std::string& name, double tol = 1e-9);

}  // namespace qtorsion
