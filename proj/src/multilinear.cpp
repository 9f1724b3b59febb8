#include "qtorsion/multilinear.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace qtorsion {

Form wedge(const Form& a, const Form& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
  const int deg = a.degree() + b.degree();
  if (deg > a.dim()) return Form(a.dim(), 0);
  Form r(a.dim(), deg);
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (s != 0) r.add(ma | mb, s * ca * cb);
    }
  return r.prune();
}

Form contract(int k, const Form& a) {
  if (a.degree() == 0) throw std::invalid_argument("contract: degree zero form");
  if (k < 0 || k >= a.dim()) throw std::out_of_range("contract: index out of range");
  Form r(a.dim(), a.degree() - 1);
  const Mask bit = Mask{1} << k;
  for (const auto& [m, c] : a.terms()) {
    if (!(m & bit)) continue;
    int before = std::popcount(m & (bit - 1));
    r.add(m & ~bit, (before % 2 ? -c : c));
  }
  return r.prune();
}

Form contract(const Vec& x, const Form& a) {
  if (static_cast<int>(x.size()) != a.dim()) throw std::invalid_argument("contract: dimension mismatch");
  if (a.degree() == 0) throw std::invalid_argument("contract: degree zero form");
  Form r(a.dim(), a.degree() - 1);
  for (int k = 0; k < a.dim(); ++k)
    if (x[k] != 0.0) r += contract(k, a) * x[k];
  return r;
}

double inner(const Form& a, const Form& b) {
  if (a.dim() != b.dim() || a.degree() != b.degree())
    throw std::invalid_argument("inner: degree or dimension mismatch");
  double s = 0.0;
  for (const auto& [m, c] : a.terms()) s += c * b.coeff(m);
  return s;
}

Form hodge_star(const Form& a) {
  const int dim = a.dim();
  const Mask full = dim == 64 ? ~Mask{0} : (Mask{1} << dim) - 1;
  Form r(dim, dim - a.degree());
  for (const auto& [m, c] : a.terms()) {
    Mask comp = full & ~m;
    r.add(comp, wedge_sign(m, comp) * c);
  }
  return r;
}

Form volume_form(int dim) {
  Form v(dim, dim);
  v.add(dim == 64 ? ~Mask{0} : (Mask{1} << dim) - 1, 1.0);
  return v;
}

Tensor act_slot(const Endomorphism& a, int slot, const Tensor& t) {
  if (slot < 1 || slot > t.degree()) throw std::out_of_range("act_slot: slot out of range");
  if (a.dim() != t.dim()) throw std::invalid_argument("act_slot: dimension mismatch");
  const int s = slot - 1;
  const std::size_t stride = t.stride(s);
  Tensor r(t.dim(), t.degree());
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    const int j = t.digit(flat, s);
    const std::size_t base = flat - j * stride;
    double v = 0.0;
    for (int k = 0; k < t.dim(); ++k) {
      double akj = a(k, j);
      if (akj != 0.0) v -= akj * t[base + k * stride];
    }
    r[flat] = v;
  }
  return r;
}

Tensor act_slot(const Endomorphism& a, int slot, const Form& f) {
  return act_slot(a, slot, to_tensor(f));
}

Tensor act_slots(const Endomorphism& a, std::initializer_list<int> slots, const Tensor& t) {
  Tensor r = t;
  for (auto it = slots.end(); it != slots.begin();) r = act_slot(a, *--it, r);
  return r;
}

Tensor act_slots(const Endomorphism& a, std::initializer_list<int> slots, const Form& f) {
  return act_slots(a, slots, to_tensor(f));
}

Form act_total(const Endomorphism& a, const Form& f) {
  const int dim = f.dim();
  if (a.dim() != dim) throw std::invalid_argument("act_total: dimension mismatch");
  // Row k lists the components of the image of e^k, which is -Σ_j a(k, j) e^j.
  std::vector<std::vector<std::pair<int, double>>> rows(dim);
  for (int k = 0; k < dim; ++k)
    for (int j = 0; j < dim; ++j)
      if (a(k, j) != 0.0) rows[k].push_back({j, -a(k, j)});
  std::unordered_map<Mask, double> acc;
  std::vector<int> idx;
  // Expands the wedge of the images one factor at a time; appending e^j after the factors
  // already placed costs one transposition per placed index above j.
  auto expand = [&](auto&& self, std::size_t pos, Mask cur, double c) -> void {
    if (pos == idx.size()) {
      acc[cur] += c;
      return;
    }
    for (const auto& [j, v] : rows[idx[pos]]) {
      const Mask bit = Mask{1} << j;
      if (cur & bit) continue;
      const int above = std::popcount(cur & ~(bit | (bit - 1)));
      self(self, pos + 1, cur | bit, above % 2 ? -c * v : c * v);
    }
  };
  for (const auto& [m, c] : f.terms()) {
    idx = indices_of(m);
    expand(expand, 0, Mask{0}, c);
  }
  Form r(dim, f.degree());
  for (const auto& [m, c] : acc) r.add(m, c);
  return r.prune();
}

Vec act_total(const Endomorphism& a, const Vec& nu) {
  Vec r(nu.size(), 0.0);
  for (std::size_t j = 0; j < nu.size(); ++j)
    for (std::size_t k = 0; k < nu.size(); ++k) r[j] -= nu[k] * a(static_cast<int>(k), static_cast<int>(j));
  return r;
}

Form lambda_op(const Form& omega, const Form& psi) {
  if (omega.degree() != 2) throw std::invalid_argument("lambda_op: omega must be a two-form");
  if (psi.degree() < 2) throw std::invalid_argument("lambda_op: degree below two");
  Form r(psi.dim(), psi.degree() - 2);
  for (const auto& [m, c] : omega.terms()) {
    std::vector<int> ij = indices_of(m);
    r += contract(ij[1], contract(ij[0], psi)) * c;
  }
  return r;
}

Form cal_l(const Endomorphism& a, const Form& psi) {
  if (psi.degree() != 3) throw std::invalid_argument("cal_l: three-form expected");
  Tensor t = to_tensor(psi);
  Tensor s = act_slots(a, {1, 2}, t) + act_slots(a, {1, 3}, t) + act_slots(a, {2, 3}, t);
  return to_form(s);
}

Form cal_l(const Endomorphism& i, const Endomorphism& j, const Endomorphism& k, const Form& psi) {
  return cal_l(i, psi) + cal_l(j, psi) + cal_l(k, psi);
}

HSplit project_h_s3h(const Endomorphism& i, const Endomorphism& j, const Endomorphism& k,
                     const Form& psi) {
  Form l = cal_l(i, j, k, psi);
  return {(psi * 3.0 + l) / 6.0, (psi * 3.0 - l) / 6.0};
}

Tensor cyclic_sum(const Tensor& t) {
  if (t.degree() != 3) throw std::invalid_argument("cyclic_sum: three slots expected");
  const int d = t.dim();
  Tensor r(d, 3);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) r(x, y, z) = t(x, y, z) + t(y, z, x) + t(z, x, y);
  return r;
}

}  // namespace qtorsion
