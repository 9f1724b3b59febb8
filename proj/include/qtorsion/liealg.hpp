#pragma once

#include <string>
#include <vector>

#include "qtorsion/form.hpp"

namespace qtorsion {

// [e_i, e_j] = c e_k with 0-based indices and i < j.
struct Bracket {
  int i = 0;
  int j = 0;
  int k = 0;
  double c = 0.0;
};

// Every increasing mask with `degree` bits below `dim`.
std::vector<Mask> masks_of_degree(int dim, int degree);

// Real Lie algebra with an orthonormal basis e_1..e_dim and dual coframe.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  // Throws std::invalid_argument when the Jacobi identity fails.
  LieAlgebra(int dim, const std::vector<Bracket>& brackets, std::vector<std::string> names = {});
  // Builds the algebra from de^k for every coframe element.
  static LieAlgebra from_differentials(const std::vector<Form>& de, std::vector<std::string> names = {});

  int dim() const { return dim_; }
  const std::vector<std::string>& names() const { return names_; }
  // ⟨[e_i, e_j], e_k⟩.
  double c(int i, int j, int k) const { return c_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k]; }
  std::vector<Bracket> brackets() const;
  const Form& d_basis(int k) const { return de_[k]; }

  Form d(const Form& a) const;
  // Metric adjoint of d on invariant forms.
  Form codifferential(const Form& a) const;
  Vec bracket(const Vec& x, const Vec& y) const;

  // Largest coefficient of d(d e^k) over all k.
  double jacobi_defect() const;
  // trace(ad e_x) for every basis vector.
  Vec ad_traces() const;
  bool unimodular(double tol = 1e-12) const;

  // Γ(x,y,z) = ⟨∇_{e_x} e_y, e_z⟩ for the Levi-Civita connection.
  Tensor levi_civita() const;

  // Same algebra in the orthonormal basis e'_a = Σ_i P(i,a) e_i.
  LieAlgebra transformed(const Endomorphism& p) const;

 private:
  void build_differentials();

  int dim_ = 0;
  std::vector<std::string> names_;
  std::vector<double> c_;
  std::vector<Form> de_;
};

}  // namespace qtorsion
