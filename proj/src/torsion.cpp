#include "qtorsion/torsion.hpp"

#include <algorithm>
#include <stdexcept>

#include "qtorsion/multilinear.hpp"

namespace qtorsion {

Form beta(const ExteriorData& x, int a) {
  const int b = next(a), c = prev(a);
  return act_total(x.op(b), x.domega[b]) + act_total(x.op(c), x.domega[c]);
}

std::array<Form, 3> betas(const ExteriorData& x) { return {beta(x, 0), beta(x, 1), beta(x, 2)}; }

std::array<Form, 3> lambda_forms(const ExteriorData& x) {
  std::array<Form, 3> out;
  for (int a = 0; a < 3; ++a) {
    const int b = next(a), c = prev(a);
    const Form& wa = x.omega[a];
    const Form& wc = x.omega[c];
    Form rhs = act_total(x.op(a), lambda_op(wc, x.domega[b])) + lambda_op(wa, x.domega[a]) -
               lambda_op(wc, x.domega[c]);
    // A² = -1 on one-forms.
    out[a] = -act_total(x.op(a), rhs) / (2.0 * x.n);
  }
  return out;
}

std::array<Form, 3> lambda_forms_alt(const ExteriorData& x) {
  std::array<Form, 3> out;
  for (int a = 0; a < 3; ++a) {
    const int b = next(a), c = prev(a);
    Form rhs = act_total(x.op(a), lambda_op(x.omega[c], x.domega[b])) +
               act_total(x.op(b), lambda_op(x.omega[c], x.domega[a])) +
               act_total(x.op(b), lambda_op(x.omega[a], x.domega[c]));
    out[a] = -act_total(x.op(a), rhs) / (2.0 * x.n);
  }
  return out;
}

std::array<Form, 3> lambda_forms_koszul(const AqhModel& m) {
  const int d = m.dim();
  std::array<Form, 3> out;
  for (int a = 0; a < 3; ++a) {
    const Tensor nb = nabla_omega_koszul(m, next(a));
    const Endomorphism& oc = m.triple().op(prev(a));
    Vec v(d, 0.0);
    for (int xx = 0; xx < d; ++xx)
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) v[xx] += nb(xx, i, j) * oc(i, j);
    for (double& c : v) c /= 2.0 * m.n();
    out[a] = Form::from_vector(v);
  }
  return out;
}

BetaDecomposition decompose_beta(const ExteriorData& x) {
  const int n = x.n;
  if (n < 2) throw std::invalid_argument("decompose_beta requires n >= 2");
  const double c3 = (2.0 * n + 1.0) * (n - 1.0);
  BetaDecomposition r;
  r.beta = betas(x);
  for (int a = 0; a < 3; ++a) {
    const int b = next(a), c = prev(a);
    const Endomorphism &oa = x.op(a), &ob = x.op(b), &oc = x.op(c);
    const Form& be = r.beta[a];
    r.nu4[a] = act_total(oa, lambda_op(x.omega[a], be));
    Form pb = act_total(ob, lambda_op(x.omega[b], be));
    Form pc = act_total(oc, lambda_op(x.omega[c], be));
    r.cross_defect[a] = (pb - pc).max_abs();
    r.nu3[a] = (pb * (2.0 * n - 1.0) - r.nu4[a]) / c3;
    const Form& v3 = r.nu3[a];
    r.betaE3[a] = wedge(act_total(ob, v3), x.omega[b]) * -0.5 + wedge(act_total(oc, v3), x.omega[c]) * -0.5 +
                  wedge(act_total(oa, v3), x.omega[a]) / (2.0 * n - 1.0);
    r.beta4[a] = wedge(act_total(oa, r.nu4[a]), x.omega[a]) * (-1.0 / (2.0 * n - 1.0));
    Form rest = be - r.betaE3[a] - r.beta4[a];
    Form lbc = cal_l(ob, rest) + cal_l(oc, rest);
    r.beta3[a] = (rest * 2.0 - lbc) / 6.0;
    r.betaK[a] = (rest * 4.0 + lbc) / 6.0;
  }
  return r;
}

std::array<Form, 3> eta_from_nu(const HypercomplexTriple& t, int n, const std::array<Form, 3>& nu3,
                                const std::array<Form, 3>& nu4) {
  const double f = (2.0 * n + 1.0) * (n - 1.0) / (4.0 * n * (2.0 * n - 1.0));
  std::array<Form, 3> out;
  for (int a = 0; a < 3; ++a) {
    const int b = next(a), c = prev(a);
    Form a_eta = (nu3[a] * (2.0 * (n - 1.0)) + nu3[b] + nu3[c] + nu4[a] - nu4[b] - nu4[c]) * f;
    out[a] = -act_total(t.op(a), a_eta);
  }
  return out;
}

std::array<Form, 3> eta_from_beta(const ExteriorData& x, const std::array<Form, 3>& be) {
  const int n = x.n;
  std::array<Form, 3> out;
  for (int a = 0; a < 3; ++a) {
    const int b = next(a), c = prev(a);
    const Endomorphism &oa = x.op(a), &ob = x.op(b), &oc = x.op(c);
    Form rhs = act_total(ob, lambda_op(x.omega[b], be[a])) * (2.0 * (n - 1.0)) +
               act_total(oa, lambda_op(x.omega[a], be[a] * (n - 1.0) + be[b] + be[c])) -
               act_total(ob, lambda_op(x.omega[b], be[b])) * n - act_total(oc, lambda_op(x.omega[c], be[c])) * n;
    out[a] = -act_total(oa, rhs) / (4.0 * n);
  }
  return out;
}

std::array<Form, 3> lambda_from_nu(const HypercomplexTriple& t, int n, const std::array<Form, 3>& nu3,
                                   const std::array<Form, 3>& nu4) {
  const double den = 4.0 * n * (2.0 * n - 1.0);
  const double f = (2.0 * n + 1.0) * (n - 1.0) / den;
  std::array<Form, 3> out;
  for (int a = 0; a < 3; ++a) {
    const int b = next(a), c = prev(a);
    Form a_lambda = (nu3[a] * 2.0 - nu3[b] - nu3[c]) * f + (nu4[a] * (2.0 * n + 1.0) - nu4[b] - nu4[c]) / den;
    out[a] = -act_total(t.op(a), a_lambda);
  }
  return out;
}

void fill_theta(TorsionReport& r, const HypercomplexTriple& t) {
  const int n = r.n;
  std::array<Form, 3> s;
  Form total(4 * n, 1);
  for (int a = 0; a < 3; ++a) {
    s[a] = r.beta.nu3[a] - act_total(t.op(a), r.lambda[a]) * 2.0;
    total += s[a];
  }
  r.theta = total * (n / (24.0 * (2.0 * n - 1.0)));
  for (int a = 0; a < 3; ++a)
    r.theta_a[a] = (s[a] - total * ((n - 1.0) / (2.0 * (2.0 * n - 1.0)))) * (n / (4.0 * (n + 1.0)));
}

std::string module_label(const ComponentFlags& flags) {
  std::string out;
  for (int c = 0; c < 6; ++c) {
    if (!flags[c]) continue;
    if (!out.empty()) out += " + ";
    out += kModuleNames[c];
  }
  return out.empty() ? "ξ = 0" : out;
}

void assign_flags(TorsionReport& r) {
  double bmax = 0.0;
  for (const Form& b : r.beta.beta) bmax = std::max(bmax, b.norm());
  r.scale = 1.0 + bmax;
  auto max_norm = [](const std::array<Form, 3>& fs) {
    double m = 0.0;
    for (const Form& f : fs) m = std::max(m, f.norm());
    return m;
  };
  r.norms[kXi33] = r.psi3.norm();
  r.norms[kXiK3] = max_norm(r.psiK_a);
  r.norms[kXiE3] = max_norm({r.theta_a[0] - r.theta, r.theta_a[1] - r.theta, r.theta_a[2] - r.theta});
  r.norms[kXi3H] = max_norm(r.psi3_a);
  r.norms[kXiKH] = r.psiK.norm();
  r.norms[kXiEH] = r.theta.norm();
  for (int c = 0; c < 6; ++c) r.flags[c] = r.norms[c] > r.tol * r.scale;
  r.label = module_label(r.flags);
}

TorsionReport torsion_report(const ExteriorData& x, double tol) {
  const int n = x.n;
  TorsionReport r;
  r.n = n;
  r.tol = tol;
  r.beta = decompose_beta(x);
  const int dim = x.dim();
  Form sum3(dim, 3), sumK(dim, 3);
  for (int a = 0; a < 3; ++a) {
    sum3 += r.beta.beta3[a];
    sumK += r.beta.betaK[a];
  }
  r.psi3 = sum3 / 12.0;
  r.psiK = sumK / -48.0;
  for (int a = 0; a < 3; ++a) {
    r.psi3_a[a] = r.beta.beta3[a] / -8.0 + (sum3 * 3.0 + cal_l(x.op(a), sum3)) / 48.0;
    r.psiK_a[a] = r.beta.betaK[a] * -0.5 + sumK / 6.0;
  }
  r.lambda = lambda_forms(x);
  fill_theta(r, x.triple);
  r.eta = eta_from_nu(x.triple, n, r.beta.nu3, r.beta.nu4);
  assign_flags(r);
  return r;
}

Tensor xi_direct(const ExteriorData& x) {
  const int n = x.n, d = x.dim();
  Tensor xi(d, 3);
  for (int a = 0; a < 3; ++a) {
    const int b = next(a), c = prev(a);
    const Endomorphism &oa = x.op(a), &ob = x.op(b), &oc = x.op(c);
    // Coefficient one-form of A Y.
    Form coef = lambda_op(x.omega[c], x.domega[b]) - act_total(oa, lambda_op(x.omega[a], x.domega[a])) +
                act_total(oa, lambda_op(x.omega[c], x.domega[c]));
    Vec v = coef.to_vector();
    for (int xx = 0; xx < d; ++xx) {
      if (v[xx] == 0.0) continue;
      for (int y = 0; y < d; ++y)
        for (int z = 0; z < d; ++z) xi(xx, y, z) += v[xx] * oa(z, y) / (4.0 * n);
    }
    Tensor a1 = act_slot(oa, 1, x.domega[a]);
    Tensor t = act_slot(oa, 2, x.domega[a]) + act_slot(oa, 3, x.domega[a]) + act_slots(ob, {1, 2}, a1) +
               act_slots(ob, {1, 3}, a1) + act_slots(oc, {2, 3}, a1) - a1;
    xi += t * 0.125;
  }
  return xi;
}

}  // namespace qtorsion
