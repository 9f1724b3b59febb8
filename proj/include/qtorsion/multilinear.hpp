#pragma once

#include <initializer_list>

#include "qtorsion/form.hpp"

namespace qtorsion {

Form wedge(const Form& a, const Form& b);
// Interior product with the basis vector e_k or with a general vector.
Form contract(int k, const Form& a);
Form contract(const Vec& x, const Form& a);
// Pairing with 1/p! normalisation, so increasing basis forms are orthonormal.
double inner(const Form& a, const Form& b);
// Orientation e_1 ∧ ... ∧ e_dim.
Form hodge_star(const Form& a);
Form volume_form(int dim);

// Slot actions use 1-based slot numbers:
// (A_(i) T)(.., X_i, ..) = -T(.., A X_i, ..).
Tensor act_slot(const Endomorphism& a, int slot, const Tensor& t);
Tensor act_slot(const Endomorphism& a, int slot, const Form& f);
// A_(ij..k) = A_(i) A_(j) ... A_(k).
Tensor act_slots(const Endomorphism& a, std::initializer_list<int> slots, const Tensor& t);
Tensor act_slots(const Endomorphism& a, std::initializer_list<int> slots, const Form& f);

// (A ψ)(X_1, ..., X_s) = (-1)^s ψ(A X_1, ..., A X_s).
Form act_total(const Endomorphism& a, const Form& f);
// A applied to a one-form: (A ν)(X) = -ν(A X).
Vec act_total(const Endomorphism& a, const Vec& nu);

// Adjoint of wedging with the two-form omega.
Form lambda_op(const Form& omega, const Form& psi);

// A_(12) + A_(13) + A_(23) on three-forms.
Form cal_l(const Endomorphism& a, const Form& psi);
Form cal_l(const Endomorphism& i, const Endomorphism& j, const Endomorphism& k, const Form& psi);

struct HSplit {
  Form h;    // +3 eigenspace of the summed operator
  Form s3h;  // -3 eigenspace
};
HSplit project_h_s3h(const Endomorphism& i, const Endomorphism& j, const Endomorphism& k,
                     const Form& psi);

// T(x,y,z) + T(y,z,x) + T(z,x,y) for a three-slot tensor.
Tensor cyclic_sum(const Tensor& t);

}  // namespace qtorsion
