#pragma once

#include <array>
#include <vector>

#include "qtorsion/check.hpp"
#include "qtorsion/form.hpp"
#include "qtorsion/structure.hpp"
#include "qtorsion/torsion.hpp"

namespace qtorsion {

// Exterior data of the metric e^{2σ}g at a point where σ = 0: dω°_A = dω_A + 2dσ∧ω_A.
ExteriorData conformal_data(const ExteriorData& x, const Form& dsigma);

// Report of the conformally changed structure obtained from the transformation laws:
// Aλ_A - dσ/n, ν - 4dσ, θ - dσ/4, β_A + 2B dσ∧ω_B + 2C dσ∧ω_C.
// Throws std::invalid_argument unless dσ is closed in `algebra`.
TorsionReport conformal_shift(const LieAlgebra& algebra, const HypercomplexTriple& triple, const Form& dsigma,
                              const TorsionReport& report);

struct TwistData {
  Form F;
  Vec X;
  double a = 1.0;
  std::array<double, 3> mu{};
  Form alpha;                      // S²E part, ¼(1 + I + J + K)F
  std::array<Form, 3> kappa_form;  // A_(1)κ_A
  std::array<Tensor, 3> kappa;     // symmetric κ_A
};

// Splits F into Σ μ_A ω_A + Σ A_(1)κ_A + α with μ_A = ⟨F, ω_A⟩/(2n).
// Throws std::invalid_argument unless dF = 0, X⌟F = 0 and a ≠ 0.
TwistData decompose_curvature(const AqhModel& m, const Form& F, const Vec& X, double a);

// Model whose differential is d^W = d - (1/a) F ∧ X⌟; throws if (d^W)² ≠ 0.
AqhModel twist(const AqhModel& m, const TwistData& data);

// Closed-form predictions for the twisted structure, per A.
struct TwistPrediction {
  std::array<Form, 3> beta;
  std::array<Form, 3> nu3;
  std::array<Form, 3> nu4;
  std::array<Form, 3> beta3;
  std::array<Form, 3> betaK;
};
TwistPrediction predict_twist(const ExteriorData& x, const TorsionReport& before, const TwistData& data);

// Reconstruction and type checks of the decomposition of F.
std::vector<Check> curvature_checks(const AqhModel& m, const TwistData& data, double tol = 1e-9);
// Predictions against the recomputed report, and the invariances that apply to the data.
std::vector<Check> twist_invariance_check(const ExteriorData& before_x, const TorsionReport& before,
                                          const ExteriorData& after_x, const TorsionReport& after,
                                          const TwistData& data, double tol = 1e-9);

struct SkewConnectionResult {
  bool ok = false;
  double residual = 0.0;
  std::array<Form, 3> gamma;
};
// Whether ∇^LC + ½T preserves the quaternionic structure: ∇̃ω_A = γ_C⊗ω_B - γ_B⊗ω_C for
// one-forms γ fitted by least squares.
SkewConnectionResult skew_connection_check(const ExteriorData& x, const Form& T, double tol = 1e-9);

// (1/6) Σ_A (β_A^(K) - β_A^(3)).
Form skew_torsion_candidate(const BetaDecomposition& b);

}  // namespace qtorsion
