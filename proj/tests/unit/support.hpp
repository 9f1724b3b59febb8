#pragma once

// Shared helpers for tests that work with whole models.

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qtorsion/analysis.hpp"
#include "qtorsion/corpus.hpp"
#include "qtorsion/formula.hpp"

namespace support {

using namespace qtorsion;

inline Form parse_for(const Analysis& an, const std::string& expr, int degree, const Variables& vars = {}) {
  return parse_form(expand_cyc(expr), an.names, degree, vars, &an.x.triple);
}

// The named quantity equals the expression to 1e-9.
inline void expect_form(const Analysis& an, const std::string& key, const std::string& expr,
                        const Variables& vars = {}) {
  const Form got = quantity(an, key);
  const Form want = parse_for(an, expr, got.degree(), vars);
  EXPECT_LT((got - want).max_abs(), 1e-9)
      << key << " = " << render_form(got, an.names, 1e-10) << ", expected " << expr;
}

inline void expect_checks_pass(const std::vector<Check>& checks, const std::string& context) {
  for (const Check& c : checks)
    if (!c.informational) EXPECT_TRUE(c.pass) << context << ": " << c.name << " residual " << c.residual;
}

// The model with its triple conjugated by a random orthogonal matrix, which generically
// switches on every torsion component.
inline AqhModel perturbed(const AqhModel& m, std::mt19937& rng) {
  return AqhModel(m.algebra(), m.triple().conjugated(oracle::random_orthogonal(rng, m.dim())));
}

// Every example at every swept parameter value.
struct Instance {
  std::string name;
  Variables params;
};
inline std::vector<Instance> all_instances() {
  std::vector<Instance> out;
  for (const std::string& name : example_names())
    for (const Variables& v : example_sweep(name)) out.push_back({name, v});
  return out;
}

inline std::string describe(const Instance& in) {
  std::string s = in.name;
  for (const auto& [k, v] : in.params) s += " " + k + "=" + std::to_string(v);
  return s;
}

}  // namespace support
