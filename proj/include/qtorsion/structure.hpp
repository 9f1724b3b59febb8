#pragma once

#include <array>

#include "qtorsion/form.hpp"
#include "qtorsion/liealg.hpp"

namespace qtorsion {

// Indices of the three almost complex structures; cyclic order I -> J -> K.
inline constexpr int kI = 0;
inline constexpr int kJ = 1;
inline constexpr int kK = 2;
inline constexpr int next(int a) { return (a + 1) % 3; }
inline constexpr int prev(int a) { return (a + 2) % 3; }
inline constexpr const char* kStructureNames[3] = {"I", "J", "K"};

class HypercomplexTriple {
 public:
  HypercomplexTriple() = default;
  // K is derived as I J. Throws when the quaternion relations fail.
  HypercomplexTriple(const Endomorphism& i, const Endomorphism& j, double tol = 1e-12);

  // Per quadruple: I e1 = e2, I e3 = e4; J e1 = e3, J e4 = e2; K = I J.
  static HypercomplexTriple standard(int dim);

  int dim() const { return op_[0].dim(); }
  const Endomorphism& op(int a) const { return op_[a]; }
  const Endomorphism& i() const { return op_[0]; }
  const Endomorphism& j() const { return op_[1]; }
  const Endomorphism& k() const { return op_[2]; }

  // Largest violation of A² = -1, K = IJ = -JI and orthogonality.
  double defect() const;

  // Matrices in the orthonormal basis e'_a = Σ_i P(i,a) e_i.
  HypercomplexTriple conjugated(const Endomorphism& p) const;
  // New adapted basis A'_r = Σ_s R(r,s) A_s for R in SO(3) (row-major 3x3).
  HypercomplexTriple rotated(const std::array<double, 9>& r) const;

 private:
  std::array<Endomorphism, 3> op_;
};

// ω_A(X, Y) = ⟨X, A Y⟩.
Form kaehler_form(const HypercomplexTriple& t, int a);
// Σ_A ω_A ∧ ω_A.
Form fundamental_form(const HypercomplexTriple& t);

class AqhModel {
 public:
  AqhModel() = default;
  // Requires dim = 4n with n >= 2.
  AqhModel(LieAlgebra algebra, HypercomplexTriple triple);

  const LieAlgebra& algebra() const { return algebra_; }
  const HypercomplexTriple& triple() const { return triple_; }
  int n() const { return algebra_.dim() / 4; }
  int dim() const { return algebra_.dim(); }

 private:
  LieAlgebra algebra_;
  HypercomplexTriple triple_;
};

// The Kähler forms and their derivatives: everything the torsion depends on.
struct ExteriorData {
  HypercomplexTriple triple;
  std::array<Form, 3> omega;
  std::array<Form, 3> domega;
  int n = 0;

  int dim() const { return 4 * n; }
  const Endomorphism& op(int a) const { return triple.op(a); }
};

ExteriorData exterior_data(const AqhModel& m);

// N_A(X,Y,Z) = ⟨X, [Y,Z] + A[AY,Z] + A[Y,AZ] - [AY,AZ]⟩ from brackets.
Tensor nijenhuis_oracle(const AqhModel& m, int a);
// 2N_A = (𝓛_A - 1) B_(23) (B dω_B - C dω_C).
Tensor nijenhuis_from_dw(const ExteriorData& x, int a);
// 2N_A = (1 - A_(12)) (C_(23) - B_(23)) (B dω_B - C dω_C).
Tensor nijenhuis_from_dw_alt(const ExteriorData& x, int a);

// Levi-Civita derivative (∇_X ω_A)(Y, Z) from the exterior derivatives, two expansions.
Tensor nabla_omega(const ExteriorData& x, int a);
Tensor nabla_omega_alt(const ExteriorData& x, int a);
// Gray: 2∇ω_A = dω_A - A_(23) dω_A - A_(3) N_A.
Tensor nabla_omega_gray(const ExteriorData& x, const Tensor& nijenhuis, int a);
// Direct evaluation through the Koszul formula.
Tensor nabla_omega_koszul(const AqhModel& m, int a);

// Max over X,Y,Z of (∇ω_I)(JY,KZ) + (∇ω_J)(KY,IZ) + (∇ω_K)(IY,JZ).
double sym_nabla_defect(const HypercomplexTriple& t, const std::array<Tensor, 3>& nabla);

}  // namespace qtorsion
