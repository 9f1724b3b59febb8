#pragma once

// Independent reference evaluators used to pin down conventions.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "qtorsion/form.hpp"
#include "qtorsion/liealg.hpp"

namespace oracle {

using qtorsion::Form;
using qtorsion::Vec;

inline int perm_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

// Determinant by the Leibniz expansion.
inline double det(const std::vector<std::vector<double>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1.0;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  double s = 0.0;
  do {
    double t = perm_sign(p);
    for (int r = 0; r < n; ++r) t *= m[r][p[r]];
    s += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return s;
}

// Σ_K c_K det(x_r[k_s]): the form evaluated on arbitrary vectors.
inline double eval(const Form& f, const std::vector<Vec>& xs) {
  double s = 0.0;
  for (const auto& [m, c] : f.terms()) {
    std::vector<int> idx = qtorsion::indices_of(m);
    std::vector<std::vector<double>> mat(idx.size(), std::vector<double>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t q = 0; q < idx.size(); ++q) mat[r][q] = xs[q][idx[r]];
    s += c * det(mat);
  }
  return s;
}

inline Vec unit(int dim, int k) {
  Vec v(dim, 0.0);
  v[k] = 1.0;
  return v;
}

// Value on basis vectors e_{idx[0]}, e_{idx[1]}, ...
inline double eval_basis(const Form& f, const std::vector<int>& idx) {
  std::vector<Vec> xs;
  for (int i : idx) xs.push_back(unit(f.dim(), i));
  return eval(f, xs);
}

// (α∧β)(X_1..X_{p+q}) = (1/(p!q!)) Σ_σ sgn σ α(X_σ..) β(X_σ..).
inline double eval_wedge(const Form& a, const Form& b, const std::vector<Vec>& xs) {
  const int p = a.degree(), q = b.degree();
  std::vector<int> perm(p + q);
  std::iota(perm.begin(), perm.end(), 0);
  double s = 0.0;
  double fact = 1.0;
  for (int i = 2; i <= p; ++i) fact *= i;
  for (int i = 2; i <= q; ++i) fact *= i;
  do {
    std::vector<Vec> xa, xb;
    for (int i = 0; i < p; ++i) xa.push_back(xs[perm[i]]);
    for (int i = 0; i < q; ++i) xb.push_back(xs[perm[p + i]]);
    s += perm_sign(perm) * eval(a, xa) * eval(b, xb);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return s / fact;
}

// Visits every ordered tuple of basis indices of the given length.
template <class F>
void for_each_tuple(int dim, int len, F&& fn) {
  std::vector<int> idx(len, 0);
  while (true) {
    fn(idx);
    int s = len - 1;
    while (s >= 0 && ++idx[s] == dim) idx[s--] = 0;
    if (s < 0) break;
  }
}

// (1/p!) Σ over all ordered tuples of a(..) b(..).
inline double inner_full(const Form& a, const Form& b) {
  double s = 0.0, fact = 1.0;
  for (int i = 2; i <= a.degree(); ++i) fact *= i;
  for_each_tuple(a.dim(), a.degree(), [&](const std::vector<int>& idx) {
    s += eval_basis(a, idx) * eval_basis(b, idx);
  });
  return s / fact;
}

inline Form random_form(std::mt19937& rng, int dim, int degree, int terms) {
  std::uniform_int_distribution<int> pick(0, dim - 1);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Form f(dim, degree);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> idx;
    while (static_cast<int>(idx.size()) < degree) {
      int k = pick(rng);
      if (std::find(idx.begin(), idx.end(), k) == idx.end()) idx.push_back(k);
    }
    f += Form::basis(dim, idx, coef(rng));
  }
  return f;
}

inline Form dense_random_form(std::mt19937& rng, int dim, int degree) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Form f(dim, degree);
  for (qtorsion::Mask m : qtorsion::masks_of_degree(dim, degree)) f.add(m, coef(rng));
  return f;
}

inline Vec random_vec(std::mt19937& rng, int dim) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Vec v(dim);
  for (double& x : v) x = coef(rng);
  return v;
}

// Orthogonal matrix from Gram–Schmidt on random columns.
inline qtorsion::Endomorphism random_orthogonal(std::mt19937& rng, int dim) {
  std::vector<Vec> cols;
  while (static_cast<int>(cols.size()) < dim) {
    Vec v = random_vec(rng, dim);
    for (const Vec& c : cols) {
      double dot = 0.0;
      for (int i = 0; i < dim; ++i) dot += v[i] * c[i];
      for (int i = 0; i < dim; ++i) v[i] -= dot * c[i];
    }
    double len = 0.0;
    for (double x : v) len += x * x;
    len = std::sqrt(len);
    if (len < 1e-3) continue;
    for (double& x : v) x /= len;
    cols.push_back(v);
  }
  qtorsion::Endomorphism p(dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) p(i, j) = cols[j][i];
  return p;
}

inline double max_diff(const Form& a, const Form& b) { return (a - b).max_abs(); }

}  // namespace oracle
