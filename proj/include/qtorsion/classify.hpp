#pragma once

#include <array>
#include <string>
#include <vector>

#include "qtorsion/check.hpp"
#include "qtorsion/form.hpp"
#include "qtorsion/structure.hpp"
#include "qtorsion/torsion.hpp"

namespace qtorsion {

// Label listing the modules whose flags are set, or "ξ = 0".
std::string classify_aqh(const TorsionReport& report);

// Gray–Hervella classes as bit masks: W1 = 1, W2 = 2, W3 = 4, W4 = 8.
using GhClass = unsigned;
inline constexpr GhClass kW1 = 1, kW2 = 2, kW3 = 4, kW4 = 8;
// "Kähler", "W_3", "W_{1+3}", ...
std::string gh_label(GhClass cls);

struct GhReport {
  std::array<bool, 4> flags{};
  std::array<double, 4> norms{};
  GhClass cls = 0;
  std::string label;
  Form lee;          // A d*ω_A = -Λ_A dω_A
  Form nij_alt;      // cyclic sum of N_A
  Tensor nijenhuis;  // N_A
  // The table condition of the assigned class holds and fails for every class one flag smaller.
  bool table_consistent = false;
};

// Per-structure class from the components 𝒩, N - 𝒩/3, Lee form and the W_3 remainder
// dω + ¼A𝒩 + Lee∧ω/(2n-1). Norms are compared against tol·(1 + ‖dω‖ + ‖N‖).
GhReport classify_gh(const ExteriorData& x, int a, double tol = 1e-9);
// The verbatim condition of the table row for `cls`, with complex dimension 2n.
bool gh_table_condition(const ExteriorData& x, const Tensor& nijenhuis, int a, GhClass cls, double tol = 1e-9);

struct HktResult {
  bool is_hkt = false;
  double defect = 0.0;  // max ‖β_A - β_B‖
  // Jdω_J = Kdω_K together with N_J = 0, which must agree with is_hkt.
  bool alternative = false;
};
HktResult hkt_check(const ExteriorData& x, double tol = 1e-9);

struct QktReport {
  bool is_qkt = false;
  bool is_hkt = false;
  std::string violation;  // first offending component when not QKT
  Form T;                 // torsion three-form
  Form t;                 // torsion one-form IΛ_I T
  std::array<Form, 3> gamma;
  std::vector<Check> checks;
};

// Torsion forms and the identity chains of QKT geometry. Informational checks record
// relations whose sign convention is not used to decide anything.
QktReport qkt_check(const ExteriorData& x, const TorsionReport& report, double tol = 1e-9);

// -AΛ_C dω_B = (n-1) A d*ω_A - n B d*ω_B - (n-1) C d*ω_C for all cyclic (A, B, C).
bool kh_type_check(const ExteriorData& x, double tol = 1e-9);
double kh_type_defect(const ExteriorData& x);

// Lee form A d*ω_A = -Λ_A dω_A.
Form lee_form(const ExteriorData& x, int a);
// d*Ω = 2 Σ (d*ω_A ∧ ω_A - A dω_A) and dΩ = 2 Σ dω_A ∧ ω_A.
Form codifferential_omega4(const ExteriorData& x);
Form d_omega4(const ExteriorData& x);

}  // namespace qtorsion
