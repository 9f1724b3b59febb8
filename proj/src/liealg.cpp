#include "qtorsion/liealg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qtorsion/multilinear.hpp"

namespace qtorsion {

std::vector<Mask> masks_of_degree(int dim, int degree) {
  std::vector<Mask> out;
  if (degree < 0 || degree > dim) return out;
  if (degree == 0) return {Mask{0}};
  Mask m = degree == 64 ? ~Mask{0} : (Mask{1} << degree) - 1;
  while (true) {
    out.push_back(m);
    Mask low = m & (~m + 1);
    Mask ripple = m + low;
    if (ripple == 0) break;
    Mask next = (((ripple ^ m) >> 2) / low) | ripple;
    if (dim < 64 && next >= (Mask{1} << dim)) break;
    m = next;
  }
  return out;
}

namespace {

std::vector<std::string> default_names(int dim, std::vector<std::string> names) {
  if (names.empty()) {
    for (int i = 0; i < dim; ++i) names.push_back("e" + std::to_string(i + 1));
  }
  if (static_cast<int>(names.size()) != dim) throw std::invalid_argument("number of names differs from dimension");
  return names;
}

}  // namespace

LieAlgebra::LieAlgebra(int dim, const std::vector<Bracket>& brackets, std::vector<std::string> names)
    : dim_(dim), names_(default_names(dim, std::move(names))),
      c_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {
  if (dim <= 0 || dim > kMaxDim) throw std::invalid_argument("Lie algebra dimension out of range");
  for (const Bracket& b : brackets) {
    if (b.i < 0 || b.j < 0 || b.k < 0 || b.i >= dim || b.j >= dim || b.k >= dim)
      throw std::invalid_argument("bracket index out of range");
    if (b.i >= b.j) throw std::invalid_argument("bracket entries need i < j");
    c_[(static_cast<std::size_t>(b.i) * dim + b.j) * dim + b.k] += b.c;
    c_[(static_cast<std::size_t>(b.j) * dim + b.i) * dim + b.k] -= b.c;
  }
  build_differentials();
  double cmax = 0.0;
  for (double v : c_) cmax = std::max(cmax, std::abs(v));
  double defect = jacobi_defect();
  if (defect > 1e-12 * (1.0 + cmax * cmax))
    throw std::invalid_argument("structure constants violate the Jacobi identity (d^2 defect " +
                                std::to_string(defect) + ")");
}

LieAlgebra LieAlgebra::from_differentials(const std::vector<Form>& de, std::vector<std::string> names) {
  const int dim = static_cast<int>(de.size());
  std::vector<Bracket> br;
  for (int k = 0; k < dim; ++k) {
    if (de[k].dim() != dim || de[k].degree() != 2)
      throw std::invalid_argument("differentials must be two-forms of the algebra dimension");
    for (const auto& [m, coef] : de[k].terms()) {
      std::vector<int> ij = indices_of(m);
      br.push_back({ij[0], ij[1], k, -coef});
    }
  }
  return LieAlgebra(dim, br, std::move(names));
}

std::vector<Bracket> LieAlgebra::brackets() const {
  std::vector<Bracket> out;
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (c(i, j, k) != 0.0) out.push_back({i, j, k, c(i, j, k)});
  return out;
}

void LieAlgebra::build_differentials() {
  de_.assign(dim_, Form(dim_, 2));
  for (int k = 0; k < dim_; ++k) {
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        if (c(i, j, k) != 0.0) de_[k].add((Mask{1} << i) | (Mask{1} << j), -c(i, j, k));
    de_[k].prune();
  }
}

Form LieAlgebra::d(const Form& a) const {
  if (a.dim() != dim_) throw std::invalid_argument("d: dimension mismatch");
  if (a.degree() >= dim_) return Form(dim_, std::min(a.degree() + 1, dim_));
  Form r(dim_, a.degree() + 1);
  for (const auto& [m, coef] : a.terms()) {
    std::vector<int> idx = indices_of(m);
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      const Form& dk = de_[idx[pos]];
      if (dk.empty()) continue;
      Mask before = 0;
      Mask after = 0;
      for (std::size_t q = 0; q < idx.size(); ++q) {
        if (q < pos) before |= Mask{1} << idx[q];
        if (q > pos) after |= Mask{1} << idx[q];
      }
      const double sign = (pos % 2) ? -1.0 : 1.0;
      for (const auto& [mk, ck] : dk.terms()) {
        int s1 = wedge_sign(before, mk);
        if (s1 == 0) continue;
        int s2 = wedge_sign(before | mk, after);
        if (s2 == 0) continue;
        r.add(before | mk | after, sign * s1 * s2 * coef * ck);
      }
    }
  }
  return r.prune();
}

Form LieAlgebra::codifferential(const Form& a) const {
  if (a.dim() != dim_) throw std::invalid_argument("codifferential: dimension mismatch");
  if (a.degree() == 0) return Form(dim_, 0);
  Form r(dim_, a.degree() - 1);
  for (Mask m : masks_of_degree(dim_, a.degree() - 1)) {
    Form basis(dim_, a.degree() - 1);
    basis.add(m, 1.0);
    double v = inner(d(basis), a);
    if (v != 0.0) r.add(m, v);
  }
  return r.prune();
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
    throw std::invalid_argument("bracket: dimension mismatch");
  Vec r(dim_, 0.0);
  for (int i = 0; i < dim_; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y[j] == 0.0) continue;
      for (int k = 0; k < dim_; ++k) r[k] += x[i] * y[j] * c(i, j, k);
    }
  }
  return r;
}

double LieAlgebra::jacobi_defect() const {
  double m = 0.0;
  for (int k = 0; k < dim_; ++k) m = std::max(m, d(de_[k]).max_abs());
  return m;
}

Vec LieAlgebra::ad_traces() const {
  Vec t(dim_, 0.0);
  for (int x = 0; x < dim_; ++x)
    for (int y = 0; y < dim_; ++y) t[x] += c(x, y, y);
  return t;
}

bool LieAlgebra::unimodular(double tol) const {
  return std::ranges::all_of(ad_traces(), [tol](double v) { return std::abs(v) <= tol; });
}

Tensor LieAlgebra::levi_civita() const {
  Tensor g(dim_, 3);
  for (int x = 0; x < dim_; ++x)
    for (int y = 0; y < dim_; ++y)
      for (int z = 0; z < dim_; ++z) g(x, y, z) = 0.5 * (c(x, y, z) - c(y, z, x) + c(z, x, y));
  return g;
}

LieAlgebra LieAlgebra::transformed(const Endomorphism& p) const {
  if (p.dim() != dim_) throw std::invalid_argument("transformed: dimension mismatch");
  const int n = dim_;
  // Contract one index at a time: c'(a,b,c) = Σ P(i,a) P(j,b) P(k,c) c(i,j,k).
  std::vector<double> t1(c_.size(), 0.0), t2(c_.size(), 0.0), t3(c_.size(), 0.0);
  auto at = [n](std::vector<double>& v, int a, int b, int c) -> double& {
    return v[(static_cast<std::size_t>(a) * n + b) * n + c];
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double v = c(i, j, k);
        if (v == 0.0) continue;
        for (int cc = 0; cc < n; ++cc) at(t1, i, j, cc) += v * p(k, cc);
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int cc = 0; cc < n; ++cc) {
        double v = at(t1, i, j, cc);
        if (v == 0.0) continue;
        for (int b = 0; b < n; ++b) at(t2, i, b, cc) += v * p(j, b);
      }
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc) {
        double v = at(t2, i, b, cc);
        if (v == 0.0) continue;
        for (int a = 0; a < n; ++a) at(t3, a, b, cc) += v * p(i, a);
      }
  std::vector<Bracket> br;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int cc = 0; cc < n; ++cc) {
        double v = at(t3, a, b, cc);
        if (std::abs(v) > kPrune) br.push_back({a, b, cc, v});
      }
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) names.push_back("f" + std::to_string(a + 1));
  return LieAlgebra(n, br, names);
}

}  // namespace qtorsion
