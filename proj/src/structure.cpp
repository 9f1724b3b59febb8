#include "qtorsion/structure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qtorsion/multilinear.hpp"

namespace qtorsion {

HypercomplexTriple::HypercomplexTriple(const Endomorphism& i, const Endomorphism& j, double tol)
    : op_{i, j, i * j} {
  if (i.dim() != j.dim() || i.dim() == 0) throw std::invalid_argument("triple: size mismatch");
  double def = defect();
  if (def > tol) throw std::invalid_argument("triple violates quaternion relations (defect " + std::to_string(def) + ")");
}

HypercomplexTriple HypercomplexTriple::standard(int dim) {
  if (dim <= 0 || dim % 4 != 0) throw std::invalid_argument("standard triple needs dimension 4n");
  Endomorphism i(dim), j(dim);
  for (int q = 0; q < dim; q += 4) {
    // Column c holds the image of e_c.
    i(q + 1, q) = 1;
    i(q, q + 1) = -1;
    i(q + 3, q + 2) = 1;
    i(q + 2, q + 3) = -1;
    j(q + 2, q) = 1;
    j(q, q + 2) = -1;
    j(q + 1, q + 3) = 1;
    j(q + 3, q + 1) = -1;
  }
  return HypercomplexTriple(i, j);
}

double HypercomplexTriple::defect() const {
  const int d = dim();
  const Endomorphism one = Endomorphism::identity(d);
  double m = 0.0;
  for (const Endomorphism& a : op_) {
    m = std::max(m, (a * a + one).max_abs());
    m = std::max(m, (a.transpose() * a - one).max_abs());
  }
  m = std::max(m, (op_[0] * op_[1] - op_[2]).max_abs());
  m = std::max(m, (op_[1] * op_[0] + op_[2]).max_abs());
  return m;
}

HypercomplexTriple HypercomplexTriple::conjugated(const Endomorphism& p) const {
  Endomorphism pt = p.transpose();
  return HypercomplexTriple(pt * op_[0] * p, pt * op_[1] * p, 1e-10);
}

HypercomplexTriple HypercomplexTriple::rotated(const std::array<double, 9>& r) const {
  auto row = [&](int s) { return op_[0] * r[3 * s] + op_[1] * r[3 * s + 1] + op_[2] * r[3 * s + 2]; };
  return HypercomplexTriple(row(0), row(1), 1e-10);
}

Form kaehler_form(const HypercomplexTriple& t, int a) {
  const Endomorphism& m = t.op(a);
  Form w(t.dim(), 2);
  for (int i = 0; i < t.dim(); ++i)
    for (int j = i + 1; j < t.dim(); ++j)
      if (m(i, j) != 0.0) w.add((Mask{1} << i) | (Mask{1} << j), m(i, j));
  return w.prune();
}

Form fundamental_form(const HypercomplexTriple& t) {
  Form o(t.dim(), 4);
  for (int a = 0; a < 3; ++a) {
    Form w = kaehler_form(t, a);
    o += wedge(w, w);
  }
  return o;
}

AqhModel::AqhModel(LieAlgebra algebra, HypercomplexTriple triple)
    : algebra_(std::move(algebra)), triple_(std::move(triple)) {
  if (algebra_.dim() != triple_.dim()) throw std::invalid_argument("algebra and triple dimensions differ");
  if (algebra_.dim() % 4 != 0) throw std::invalid_argument("dimension must be a multiple of 4");
  if (algebra_.dim() < 8) throw std::invalid_argument("quaternionic dimension n must be at least 2");
}

ExteriorData exterior_data(const AqhModel& m) {
  ExteriorData x;
  x.triple = m.triple();
  x.n = m.n();
  for (int a = 0; a < 3; ++a) {
    x.omega[a] = kaehler_form(m.triple(), a);
    x.domega[a] = m.algebra().d(x.omega[a]);
  }
  return x;
}

namespace {

Vec unit(int dim, int k) {
  Vec v(dim, 0.0);
  v[k] = 1.0;
  return v;
}

Vec add(Vec a, const Vec& b, double s = 1.0) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

// B dω_B - C dω_C for B, C following A cyclically.
Tensor beta_difference(const ExteriorData& x, int a) {
  const int b = next(a), c = prev(a);
  return to_tensor(act_total(x.op(b), x.domega[b]) - act_total(x.op(c), x.domega[c]));
}

}  // namespace

Tensor nijenhuis_oracle(const AqhModel& m, int a) {
  const LieAlgebra& g = m.algebra();
  const Endomorphism& op = m.triple().op(a);
  const int d = m.dim();
  Tensor n(d, 3);
  for (int y = 0; y < d; ++y)
    for (int z = 0; z < d; ++z) {
      Vec ey = unit(d, y), ez = unit(d, z);
      Vec ay = op.apply(ey), az = op.apply(ez);
      Vec v = g.bracket(ey, ez);
      v = add(v, op.apply(g.bracket(ay, ez)));
      v = add(v, op.apply(g.bracket(ey, az)));
      v = add(v, g.bracket(ay, az), -1.0);
      for (int x = 0; x < d; ++x) n(x, y, z) = v[x];
    }
  return n;
}

Tensor nijenhuis_from_dw(const ExteriorData& x, int a) {
  const Endomorphism& op = x.op(a);
  Tensor t = act_slots(x.op(next(a)), {2, 3}, beta_difference(x, a));
  Tensor r = act_slots(op, {1, 2}, t) + act_slots(op, {1, 3}, t) + act_slots(op, {2, 3}, t) - t;
  return r * 0.5;
}

Tensor nijenhuis_from_dw_alt(const ExteriorData& x, int a) {
  Tensor u = beta_difference(x, a);
  Tensor t = act_slots(x.op(prev(a)), {2, 3}, u) - act_slots(x.op(next(a)), {2, 3}, u);
  return (t - act_slots(x.op(a), {1, 2}, t)) * 0.5;
}

Tensor nabla_omega(const ExteriorData& x, int a) {
  const Endomorphism& op = x.op(a);
  const int b = next(a), c = prev(a);
  Tensor dw = to_tensor(x.domega[a]);
  Tensor b1b = act_slot(x.op(b), 1, x.domega[b]);
  Tensor b1c = act_slot(x.op(b), 1, x.domega[c]);
  Tensor r = dw - act_slots(op, {2, 3}, dw);
  r += act_slot(op, 2, b1b) + act_slot(op, 3, b1b);
  r -= b1c - act_slots(op, {2, 3}, b1c);
  return r * 0.5;
}

Tensor nabla_omega_alt(const ExteriorData& x, int a) {
  const Endomorphism& op = x.op(a);
  const int b = next(a), c = prev(a);
  Tensor dw = to_tensor(x.domega[a]);
  Tensor c1c = act_slot(x.op(c), 1, x.domega[c]);
  Tensor c1b = act_slot(x.op(c), 1, x.domega[b]);
  Tensor r = dw - act_slots(op, {2, 3}, dw);
  r += act_slot(op, 2, c1c) + act_slot(op, 3, c1c);
  r += c1b - act_slots(op, {2, 3}, c1b);
  return r * 0.5;
}

Tensor nabla_omega_gray(const ExteriorData& x, const Tensor& nijenhuis, int a) {
  Tensor dw = to_tensor(x.domega[a]);
  return (dw - act_slots(x.op(a), {2, 3}, dw) - act_slot(x.op(a), 3, nijenhuis)) * 0.5;
}

Tensor nabla_omega_koszul(const AqhModel& m, int a) {
  const Tensor gamma = m.algebra().levi_civita();
  const Endomorphism& op = m.triple().op(a);
  const int d = m.dim();
  Tensor r(d, 3);
  // (∇_x ω)(y, w) = -ω(∇_x e_y, e_w) - ω(e_y, ∇_x e_w), with ω(e_z, e_w) = A(z, w).
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int w = 0; w < d; ++w) {
        double v = 0.0;
        for (int z = 0; z < d; ++z) v -= gamma(x, y, z) * op(z, w) + gamma(x, w, z) * op(y, z);
        r(x, y, w) = v;
      }
  return r;
}

double sym_nabla_defect(const HypercomplexTriple& t, const std::array<Tensor, 3>& nabla) {
  const int d = t.dim();
  double worst = 0.0;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        double s = 0.0;
        for (int a = 0; a < 3; ++a) {
          const Endomorphism& p = t.op(next(a));
          const Endomorphism& q = t.op(prev(a));
          // (∇_x ω_A)(P e_y, Q e_z) expanded in the basis.
          for (int u = 0; u < d; ++u) {
            if (p(u, y) == 0.0) continue;
            for (int v = 0; v < d; ++v)
              if (q(v, z) != 0.0) s += p(u, y) * q(v, z) * nabla[a](x, u, v);
          }
        }
        worst = std::max(worst, std::abs(s));
      }
  return worst;
}

}  // namespace qtorsion
