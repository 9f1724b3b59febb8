#pragma once

#include <array>
#include <string>

#include "qtorsion/form.hpp"
#include "qtorsion/structure.hpp"

namespace qtorsion {

// β_A = B dω_B + C dω_C.
Form beta(const ExteriorData& x, int a);
std::array<Form, 3> betas(const ExteriorData& x);

// λ_A from 2n Aλ_A = AΛ_C dω_B + Λ_A dω_A - Λ_C dω_C.
std::array<Form, 3> lambda_forms(const ExteriorData& x);
// λ_A from 2n Aλ_A = AΛ_C dω_B + BΛ_C dω_A + BΛ_A dω_C.
std::array<Form, 3> lambda_forms_alt(const ExteriorData& x);
// λ_A(X) = (1/2n) ⟨∇_X ω_B, ω_C⟩ with the Koszul derivative.
std::array<Form, 3> lambda_forms_koszul(const AqhModel& m);

struct BetaDecomposition {
  std::array<Form, 3> beta;
  std::array<Form, 3> beta3;   // Λ³₀E part
  std::array<Form, 3> betaK;   // K part
  std::array<Form, 3> betaE3;  // E part of W_3
  std::array<Form, 3> beta4;   // W_4 part
  std::array<Form, 3> nu3;
  std::array<Form, 3> nu4;
  // |BΛ_B β_A - CΛ_C β_A|, which vanishes identically.
  std::array<double, 3> cross_defect{};
};

BetaDecomposition decompose_beta(const ExteriorData& x);

// The six components, in the order used for flags and labels.
enum Component { kXi33 = 0, kXiK3, kXiE3, kXi3H, kXiKH, kXiEH };
inline constexpr const char* kComponentNames[6] = {"xi33", "xiK3", "xiE3", "xi3H", "xiKH", "xiEH"};
inline constexpr const char* kModuleNames[6] = {"Λ³₀E S³H", "K S³H", "E S³H", "Λ³₀EH", "KH", "EH"};

using ComponentFlags = std::array<bool, 6>;

struct TorsionReport {
  int n = 0;
  BetaDecomposition beta;
  Form psi3;
  std::array<Form, 3> psi3_a;
  Form psiK;
  std::array<Form, 3> psiK_a;
  Form theta;
  std::array<Form, 3> theta_a;
  std::array<Form, 3> lambda;
  std::array<Form, 3> eta;
  // Norm of the form measuring each component, and the scale 1 + max ‖β_A‖.
  std::array<double, 6> norms{};
  double scale = 1.0;
  double tol = 1e-9;
  ComponentFlags flags{};
  std::string label;
};

TorsionReport torsion_report(const ExteriorData& x, double tol = 1e-9);

// Aη_A from the ν one-forms; returns η_A.
std::array<Form, 3> eta_from_nu(const HypercomplexTriple& t, int n, const std::array<Form, 3>& nu3,
                                const std::array<Form, 3>& nu4);
// Aη_A through the β-forms directly; returns η_A.
std::array<Form, 3> eta_from_beta(const ExteriorData& x, const std::array<Form, 3>& beta);
// Aλ_A from the ν one-forms; returns λ_A.
std::array<Form, 3> lambda_from_nu(const HypercomplexTriple& t, int n, const std::array<Form, 3>& nu3,
                                   const std::array<Form, 3>& nu4);

// θ and θ_A from ν3 and λ.
void fill_theta(TorsionReport& r, const HypercomplexTriple& t);
// Recomputes norms, flags and label from the stored forms.
void assign_flags(TorsionReport& r);

// Modules with a set flag joined by " + ", or "ξ = 0".
std::string module_label(const ComponentFlags& flags);

// ξ(x,y,z) = ⟨e_z, ξ_{e_x} e_y⟩ directly from the exterior derivatives.
Tensor xi_direct(const ExteriorData& x);

}  // namespace qtorsion
