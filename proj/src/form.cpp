#include "qtorsion/form.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qtorsion {

Mask mask_of(std::span<const int> indices) {
  Mask m = 0;
  for (int i : indices) {
    if (i < 0 || i >= kMaxDim) throw std::out_of_range("basis index out of range");
    Mask bit = Mask{1} << i;
    if (m & bit) throw std::invalid_argument("repeated basis index");
    m |= bit;
  }
  return m;
}

std::vector<int> indices_of(Mask m) {
  std::vector<int> out;
  out.reserve(std::popcount(m));
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

int wedge_sign(Mask m1, Mask m2) {
  if (m1 & m2) return 0;
  int swaps = 0;
  Mask rest = m2;
  while (rest) {
    int j = std::countr_zero(rest);
    rest &= rest - 1;
    swaps += std::popcount(j + 1 < 64 ? (m1 >> (j + 1)) : Mask{0});
  }
  return (swaps % 2) ? -1 : 1;
}

namespace {

// Sign of the permutation sorting `idx`; zero when an index repeats.
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

double factorial(int p) {
  double f = 1.0;
  for (int i = 2; i <= p; ++i) f *= i;
  return f;
}

}  // namespace

Endomorphism::Endomorphism(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim, 0.0) {}

Endomorphism Endomorphism::identity(int dim) {
  Endomorphism e(dim);
  for (int i = 0; i < dim; ++i) e(i, i) = 1.0;
  return e;
}

Vec Endomorphism::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("vector size mismatch");
  Vec y(dim_, 0.0);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) y[r] += (*this)(r, c) * x[c];
  return y;
}

Endomorphism Endomorphism::transpose() const {
  Endomorphism t(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Endomorphism Endomorphism::operator*(const Endomorphism& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("endomorphism size mismatch");
  Endomorphism p(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int k = 0; k < dim_; ++k) {
      double v = (*this)(r, k);
      if (v == 0.0) continue;
      for (int c = 0; c < dim_; ++c) p(r, c) += v * other(k, c);
    }
  return p;
}

Endomorphism Endomorphism::operator+(const Endomorphism& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("endomorphism size mismatch");
  Endomorphism s = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] += other.a_[i];
  return s;
}

Endomorphism Endomorphism::operator-(const Endomorphism& other) const {
  return *this + other * -1.0;
}

Endomorphism Endomorphism::operator*(double s) const {
  Endomorphism r = *this;
  for (double& v : r.a_) v *= s;
  return r;
}

double Endomorphism::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

Form::Form(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 0 || dim > kMaxDim) throw std::invalid_argument("form dimension out of range");
  if (degree < 0 || degree > dim) throw std::invalid_argument("form degree out of range");
}

Form Form::scalar(int dim, double value) {
  Form f(dim, 0);
  f.add(0, value);
  return f;
}

Form Form::basis(int dim, std::initializer_list<int> indices, double c) {
  return basis(dim, std::span<const int>(indices.begin(), indices.size()), c);
}

Form Form::basis(int dim, std::span<const int> indices, double c) {
  std::vector<int> idx(indices.begin(), indices.end());
  for (int i : idx)
    if (i < 0 || i >= dim) throw std::out_of_range("basis index out of range");
  int sign = sort_sign(idx);
  Form f(dim, static_cast<int>(idx.size()));
  if (sign != 0) f.add(mask_of(idx), sign * c);
  return f;
}

Form Form::from_vector(const Vec& components) {
  Form f(static_cast<int>(components.size()), 1);
  for (std::size_t i = 0; i < components.size(); ++i) f.add(Mask{1} << i, components[i]);
  return f.prune();
}

double Form::coeff(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

double Form::eval(std::span<const int> indices) const {
  if (static_cast<int>(indices.size()) != degree_) throw std::invalid_argument("wrong number of arguments");
  std::vector<int> idx(indices.begin(), indices.end());
  int sign = sort_sign(idx);
  if (sign == 0) return 0.0;
  return sign * coeff(mask_of(idx));
}

Vec Form::to_vector() const {
  if (degree_ != 1) throw std::invalid_argument("to_vector needs a one-form");
  Vec v(dim_, 0.0);
  for (const auto& [m, c] : terms_) v[std::countr_zero(m)] = c;
  return v;
}

void Form::add(Mask m, double c) {
  if (std::popcount(m) != degree_) throw std::invalid_argument("multi-index of wrong degree");
  if (dim_ < 64 && (m >> dim_) != 0) throw std::out_of_range("multi-index outside dimension");
  if (c == 0.0) return;
  terms_[m] += c;
}

Form& Form::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kPrune; });
  return *this;
}

void Form::check_compatible(const Form& other) const {
  if (dim_ != other.dim_ || degree_ != other.degree_)
    throw std::invalid_argument("form dimension or degree mismatch (" + std::to_string(degree_) +
                                " vs " + std::to_string(other.degree_) + ")");
}

Form& Form::operator+=(const Form& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) terms_[m] += c;
  return prune();
}

Form& Form::operator-=(const Form& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) terms_[m] -= c;
  return prune();
}

Form& Form::operator*=(double s) {
  for (auto& kv : terms_) kv.second *= s;
  return prune();
}

Form Form::operator+(const Form& other) const {
  Form r = *this;
  r += other;
  return r;
}

Form Form::operator-(const Form& other) const {
  Form r = *this;
  r -= other;
  return r;
}

Form Form::operator-() const { return *this * -1.0; }

Form Form::operator*(double s) const {
  Form r = *this;
  r *= s;
  return r;
}

Form Form::operator/(double s) const { return *this * (1.0 / s); }

Form operator*(double s, const Form& f) { return f * s; }

double Form::max_abs() const {
  double m = 0.0;
  for (const auto& kv : terms_) m = std::max(m, std::abs(kv.second));
  return m;
}

double Form::norm() const {
  double s = 0.0;
  for (const auto& kv : terms_) s += kv.second * kv.second;
  return std::sqrt(s);
}

Tensor::Tensor(int dim, int degree) : dim_(dim), degree_(degree), strides_(degree, 1) {
  if (dim <= 0 || degree < 0) throw std::invalid_argument("bad tensor shape");
  std::size_t total = 1;
  for (int s = degree - 1; s >= 0; --s) {
    strides_[s] = total;
    total *= static_cast<std::size_t>(dim);
  }
  data_.assign(total, 0.0);
}

double Tensor::at(std::span<const int> idx) const {
  std::size_t flat = 0;
  for (int s = 0; s < degree_; ++s) flat += idx[s] * strides_[s];
  return data_[flat];
}

int Tensor::digit(std::size_t flat, int slot) const {
  return static_cast<int>((flat / strides_[slot]) % dim_);
}

void Tensor::check_compatible(const Tensor& other) const {
  if (dim_ != other.dim_ || degree_ != other.degree_) throw std::invalid_argument("tensor shape mismatch");
}

Tensor& Tensor::operator+=(const Tensor& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Tensor Tensor::operator+(const Tensor& other) const {
  Tensor r = *this;
  r += other;
  return r;
}

Tensor Tensor::operator-(const Tensor& other) const {
  Tensor r = *this;
  r -= other;
  return r;
}

Tensor Tensor::operator-() const { return *this * -1.0; }

Tensor Tensor::operator*(double s) const {
  Tensor r = *this;
  r *= s;
  return r;
}

Tensor operator*(double s, const Tensor& t) { return t * s; }

double Tensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Tensor::norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s / factorial(degree_));
}

Tensor to_tensor(const Form& f) {
  Tensor t(f.dim(), f.degree());
  const int p = f.degree();
  std::vector<int> perm(p);
  for (const auto& [m, c] : f.terms()) {
    std::vector<int> idx = indices_of(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::size_t flat = 0;
      int inversions = 0;
      for (int s = 0; s < p; ++s) {
        flat += idx[perm[s]] * t.stride(s);
        for (int r = s + 1; r < p; ++r)
          if (perm[s] > perm[r]) ++inversions;
      }
      t[flat] = (inversions % 2 ? -c : c);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return t;
}

namespace {

Form increasing_part(const Tensor& t) {
  Form f(t.dim(), t.degree());
  const int p = t.degree();
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    bool increasing = true;
    for (int s = 1; s < p && increasing; ++s) increasing = t.digit(flat, s - 1) < t.digit(flat, s);
    if (!increasing || t[flat] == 0.0) continue;
    Mask m = 0;
    for (int s = 0; s < p; ++s) m |= Mask{1} << t.digit(flat, s);
    f.add(m, t[flat]);
  }
  return f.prune();
}

}  // namespace

double antisymmetry_defect(const Tensor& t) {
  return (to_tensor(increasing_part(t)) - t).max_abs();
}

Form to_form(const Tensor& t, double rel_tol) {
  Form f = increasing_part(t);
  double defect = (to_tensor(f) - t).max_abs();
  if (defect > rel_tol * (1.0 + t.max_abs()))
    throw std::logic_error("tensor expected to be antisymmetric has defect " + std::to_string(defect));
  return f;
}

}  // namespace qtorsion
