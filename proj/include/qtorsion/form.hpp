#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

namespace qtorsion {

using Vec = std::vector<double>;

// Strictly increasing index tuples are stored as bit sets over basis indices.
using Mask = std::uint64_t;

inline constexpr int kMaxDim = 64;
inline constexpr double kPrune = 1e-14;

Mask mask_of(std::span<const int> indices);
std::vector<int> indices_of(Mask m);

// Sign of e^m1 ∧ e^m2 relative to e^(m1|m2); zero when the sets overlap.
int wedge_sign(Mask m1, Mask m2);

// Square matrix acting on column vectors: column j holds the image of e_j.
class Endomorphism {
 public:
  Endomorphism() = default;
  explicit Endomorphism(int dim);
  static Endomorphism identity(int dim);

  int dim() const { return dim_; }
  double operator()(int row, int col) const { return a_[row * dim_ + col]; }
  double& operator()(int row, int col) { return a_[row * dim_ + col]; }

  Vec apply(const Vec& x) const;
  Endomorphism transpose() const;
  Endomorphism operator*(const Endomorphism& other) const;
  Endomorphism operator+(const Endomorphism& other) const;
  Endomorphism operator-(const Endomorphism& other) const;
  Endomorphism operator*(double s) const;
  double max_abs() const;

 private:
  int dim_ = 0;
  std::vector<double> a_;
};

// Exterior form with sparse coefficients on increasing multi-indices.
// coeff(m) is the value of the form on (e_i1, ..., e_ip) for m = {i1 < ... < ip}.
class Form {
 public:
  Form() = default;
  Form(int dim, int degree);

  static Form scalar(int dim, double value);
  static Form basis(int dim, std::initializer_list<int> indices, double c = 1.0);
  static Form basis(int dim, std::span<const int> indices, double c = 1.0);
  static Form from_vector(const Vec& components);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<Mask, double>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  double coeff(Mask m) const;
  // Evaluation on basis vectors in any order (antisymmetric).
  double eval(std::span<const int> indices) const;
  // One-form components (size dim).
  Vec to_vector() const;

  void add(Mask m, double c);
  Form& prune();

  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  Form& operator*=(double s);
  Form operator+(const Form& other) const;
  Form operator-(const Form& other) const;
  Form operator-() const;
  Form operator*(double s) const;
  Form operator/(double s) const;

  double max_abs() const;
  double norm() const;

 private:
  void check_compatible(const Form& other) const;

  int dim_ = 0;
  int degree_ = 0;
  std::map<Mask, double> terms_;
};

Form operator*(double s, const Form& f);

// Dense covariant tensor without symmetry, used for slot actions.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  std::size_t size() const { return data_.size(); }
  std::size_t stride(int slot) const { return strides_[slot]; }

  double operator[](std::size_t flat) const { return data_[flat]; }
  double& operator[](std::size_t flat) { return data_[flat]; }
  double operator()(int i, int j) const { return data_[i * strides_[0] + j]; }
  double& operator()(int i, int j) { return data_[i * strides_[0] + j]; }
  double operator()(int i, int j, int k) const {
    return data_[i * strides_[0] + j * strides_[1] + k];
  }
  double& operator()(int i, int j, int k) {
    return data_[i * strides_[0] + j * strides_[1] + k];
  }
  double at(std::span<const int> idx) const;
  int digit(std::size_t flat, int slot) const;

  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);
  Tensor& operator*=(double s);
  Tensor operator+(const Tensor& other) const;
  Tensor operator-(const Tensor& other) const;
  Tensor operator-() const;
  Tensor operator*(double s) const;

  double max_abs() const;
  // Norm normalised so that a form and its tensor have equal norms.
  double norm() const;

 private:
  void check_compatible(const Tensor& other) const;

  int dim_ = 0;
  int degree_ = 0;
  std::vector<std::size_t> strides_;
  std::vector<double> data_;
};

Tensor operator*(double s, const Tensor& t);

Tensor to_tensor(const Form& f);
// Max deviation of t from its own antisymmetrisation.
double antisymmetry_defect(const Tensor& t);
// Reads the increasing components; throws if t is not antisymmetric to rel_tol.
Form to_form(const Tensor& t, double rel_tol = 1e-9);

}  // namespace qtorsion
