#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qtorsion/check.hpp"
#include "qtorsion/classify.hpp"
#include "qtorsion/form.hpp"
#include "qtorsion/structure.hpp"
#include "qtorsion/torsion.hpp"
#include "qtorsion/transforms.hpp"

namespace qtorsion {

// Everything computed for one structure. The model is absent for data obtained by a
// conformal change, which is no longer given by a Lie algebra in the same coframe.
struct Analysis {
  std::optional<AqhModel> model;
  ExteriorData x;
  std::vector<std::string> names;
  double tol = 1e-9;
  bool unimodular = true;
  TorsionReport report;
  std::array<GhReport, 3> gh;
  HktResult hkt;
  QktReport qkt;
  bool kh_type = false;
};

Analysis analyze(const AqhModel& m, double tol = 1e-9);
Analysis analyze(const ExteriorData& x, const std::vector<std::string>& names, double tol = 1e-9);

// Named quantities: domega_A, beta_A, beta3_A, betaK_A, betaE_A, betaE3_A, beta4_A, nu3_A, nu4_A,
// lambda_A, Alambda_A, eta_A, lee_A, theta, theta_A, psi3, psi3_A, psiK, psiK_A, t, T, dOmega,
// codOmega, with A one of I, J, K. Throws std::invalid_argument for unknown keys.
Form quantity(const Analysis& an, const std::string& key);
const std::vector<std::string>& quantity_keys();

// The identity suite that must hold for every structure.
std::vector<Check> identity_checks(const Analysis& an);

// Warnings when a flag decision rests on a norm within two decades of its threshold, or
// the tolerance is below the roundoff of the computation.
std::vector<std::string> tolerance_warnings(const Analysis& an);

// Twist of an analysed model, with the decomposition and invariance findings.
struct TwistRun {
  TwistData data;
  AqhModel model;
  Analysis after;
  std::vector<Check> checks;
};
// Throws std::invalid_argument when the twist preconditions fail.
TwistRun run_twist(const AqhModel& m, const Analysis& before, const Form& F, const Vec& X, double a);

// Conformal change of an analysed structure by a closed dσ, with the transformation laws
// compared against the recomputed torsion.
struct ConformalRun {
  Analysis after;
  TorsionReport shifted;
  std::vector<Check> checks;
};
// Throws std::invalid_argument unless dσ is closed.
ConformalRun run_conformal(const LieAlgebra& algebra, const Analysis& before, const Form& dsigma);

}  // namespace qtorsion
