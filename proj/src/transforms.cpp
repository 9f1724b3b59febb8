#include "qtorsion/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qtorsion/multilinear.hpp"

namespace qtorsion {

namespace {

Form apply(const HypercomplexTriple& t, int a, const Form& f) { return act_total(t.op(a), f); }

double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// κ(X, ·) for a symmetric two-slot tensor.
Form contract_sym(const Tensor& kappa, const Vec& x) {
  const int d = kappa.dim();
  Vec v(d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v[j] += x[i] * kappa(i, j);
  return Form::from_vector(v);
}

// B_(1)κ as a two-form.
Form slot_one(const Endomorphism& b, const Tensor& kappa) { return to_form(act_slot(b, 1, kappa)); }

}  // namespace

ExteriorData conformal_data(const ExteriorData& x, const Form& dsigma) {
  ExteriorData out = x;
  for (int a = 0; a < 3; ++a) out.domega[a] = x.domega[a] + wedge(dsigma, x.omega[a]) * 2.0;
  return out;
}

TorsionReport conformal_shift(const LieAlgebra& algebra, const HypercomplexTriple& t, const Form& ds,
                              const TorsionReport& r) {
  if (ds.degree() != 1) throw std::invalid_argument("dσ must be a one-form");
  if (algebra.d(ds).max_abs() > 1e-12 * (1.0 + ds.max_abs()))
    throw std::invalid_argument("dσ is not closed");
  const int n = r.n;
  TorsionReport o = r;
  std::array<Form, 3> omega;
  for (int a = 0; a < 3; ++a) omega[a] = kaehler_form(t, a);
  for (int a = 0; a < 3; ++a) {
    const int b = next(a), c = prev(a);
    const Endomorphism &ob = t.op(b), &oc = t.op(c), &oa = t.op(a);
    o.beta.beta[a] += (wedge(act_total(ob, ds), omega[b]) + wedge(act_total(oc, ds), omega[c])) * 2.0;
    o.beta.nu3[a] -= ds * 4.0;
    o.beta.nu4[a] -= ds * 4.0;
    const Form& v3 = o.beta.nu3[a];
    o.beta.betaE3[a] = wedge(act_total(ob, v3), omega[b]) * -0.5 + wedge(act_total(oc, v3), omega[c]) * -0.5 +
                       wedge(act_total(oa, v3), omega[a]) / (2.0 * n - 1.0);
    o.beta.beta4[a] = wedge(act_total(oa, o.beta.nu4[a]), omega[a]) * (-1.0 / (2.0 * n - 1.0));
    // λ_A = -A(Aλ_A) on one-forms.
    o.lambda[a] = r.lambda[a] + act_total(oa, ds) / static_cast<double>(n);
    o.theta_a[a] = r.theta_a[a] - ds * 0.25;
  }
  o.theta = r.theta - ds * 0.25;
  o.eta = eta_from_nu(t, n, o.beta.nu3, o.beta.nu4);
  assign_flags(o);
  return o;
}

TwistData decompose_curvature(const AqhModel& m, const Form& F, const Vec& X, double a) {
  if (F.degree() != 2) throw std::invalid_argument("twist curvature must be a two-form");
  if (a == 0.0) throw std::invalid_argument("twist parameter a must be nonzero");
  const double scale = 1e-12 * (1.0 + F.max_abs());
  if (m.algebra().d(F).max_abs() > scale) throw std::invalid_argument("twist curvature is not closed");
  double xmax = 0.0;
  for (double v : X) xmax = std::max(xmax, std::abs(v));
  if (contract(X, F).max_abs() > scale * (1.0 + xmax))
    throw std::invalid_argument("twist requires X⌟F = 0");
  const HypercomplexTriple& t = m.triple();
  TwistData d;
  d.F = F;
  d.X = X;
  d.a = a;
  auto quarter_sum = [&](const Form& g) {
    return (g + apply(t, kI, g) + apply(t, kJ, g) + apply(t, kK, g)) * 0.25;
  };
  d.alpha = quarter_sum(F);
  for (int b = 0; b < 3; ++b) {
    const Form w = kaehler_form(t, b);
    d.mu[b] = inner(F, w) / (2.0 * m.n());
    // The outer A act on the first slot, with the quaternionic average taken on tensors.
    const Tensor af = act_slot(t.op(b), 1, F);
    Tensor avg = af;
    for (int c = 0; c < 3; ++c) avg += act_slots(t.op(c), {1, 2}, af);
    d.kappa_form[b] = to_form(act_slot(t.op(b), 1, avg)) * -0.25 - w * d.mu[b];
    // κ(Z, Y) = (A_(1)κ)(AZ, Y).
    const int dim = m.dim();
    Tensor k(dim, 2);
    const Tensor kf = to_tensor(d.kappa_form[b]);
    const Endomorphism& op = t.op(b);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int r = 0; r < dim; ++r) k(i, j) += op(r, i) * kf(r, j);
    d.kappa[b] = k;
  }
  return d;
}

AqhModel twist(const AqhModel& m, const TwistData& data) {
  const LieAlgebra& g = m.algebra();
  std::vector<Form> de;
  for (int k = 0; k < g.dim(); ++k) de.push_back(g.d_basis(k) - data.F * (data.X[k] / data.a));
  LieAlgebra tw = LieAlgebra::from_differentials(de, g.names());
  return AqhModel(tw, m.triple());
}

TwistPrediction predict_twist(const ExteriorData& x, const TorsionReport& r, const TwistData& d) {
  const double n = x.n, a = d.a;
  const Form xf = Form::from_vector(d.X);
  TwistPrediction p;
  for (int i = 0; i < 3; ++i) {
    const int j = next(i), k = prev(i);
    const HypercomplexTriple& t = x.triple;
    const Vec ix = t.op(i).apply(d.X), jx = t.op(j).apply(d.X), kx = t.op(k).apply(d.X);
    const Form ixf = apply(t, i, xf), jxf = apply(t, j, xf), kxf = apply(t, k, xf);
    const Tensor& ka = d.kappa[i];
    const Form x_k = contract_sym(ka, d.X), ix_k = contract_sym(ka, ix), jx_k = contract_sym(ka, jx),
               kx_k = contract_sym(ka, kx);
    const Form x_a = contract(d.X, d.alpha), ix_a = contract(ix, d.alpha), jx_a = contract(jx, d.alpha),
               kx_a = contract(kx, d.alpha);
    const Form i1 = slot_one(t.op(i), ka), j1 = slot_one(t.op(j), ka), k1 = slot_one(t.op(k), ka);
    const Form& wi = x.omega[i];
    const Form& wj = x.omega[j];
    const Form& wk = x.omega[k];

    p.beta[i] = r.beta.beta[i] - wedge(xf, apply(t, j, d.F) + apply(t, k, d.F)) / a;
    p.nu4[i] = r.beta.nu4[i] + (ixf * (d.mu[i] * (2.0 * n - 1.0)) - x_a - ix_k) * (2.0 / a);
    p.nu3[i] = r.beta.nu3[i] + (ix_k * n - x_a * (n - 1.0)) * (4.0 / (a * (2.0 * n + 1.0) * (n - 1.0)));
    p.beta3[i] = r.beta.beta3[i] +
                 (wedge(xf, i1) * 2.0 + wedge(jxf, k1) - wedge(kxf, j1)) * (2.0 / (3.0 * a)) +
                 (wedge(x_k, wi) * 2.0 - wedge(kx_k, wj) + wedge(jx_k, wk)) * (2.0 / (3.0 * a * (n - 1.0)));
    p.betaK[i] = r.beta.betaK[i] - wedge(xf, d.alpha) * (2.0 / a) +
                 (wedge(xf, i1) - wedge(jxf, k1) + wedge(kxf, j1)) * (2.0 / (3.0 * a)) -
                 (wedge(x_k, wi) + wedge(kx_k, wj) + wedge(jx_k, wk)) * (2.0 / (3.0 * a * (2.0 * n + 1.0))) -
                 (wedge(ix_a, wi) + wedge(jx_a, wj) + wedge(kx_a, wk)) * (2.0 / (a * (2.0 * n + 1.0)));
  }
  return p;
}

std::vector<Check> curvature_checks(const AqhModel& m, const TwistData& d, double tol) {
  const HypercomplexTriple& t = m.triple();
  const double eps = tol * (1.0 + d.F.norm());
  std::vector<Check> out;
  Form rebuilt = d.alpha;
  for (int b = 0; b < 3; ++b) rebuilt += kaehler_form(t, b) * d.mu[b] + d.kappa_form[b];
  out.push_back(make_check("curvature reconstruction", (rebuilt - d.F).norm(), eps));
  double alpha_inv = 0.0;
  for (int b = 0; b < 3; ++b) alpha_inv = std::max(alpha_inv, (apply(t, b, d.alpha) - d.alpha).norm());
  out.push_back(make_check("S²E part invariant under I, J, K", alpha_inv, eps));
  double sym = 0.0, trace = 0.0, type = 0.0;
  for (int b = 0; b < 3; ++b) {
    const Tensor& k = d.kappa[b];
    double tr = 0.0;
    for (int i = 0; i < k.dim(); ++i) {
      tr += k(i, i);
      for (int j = 0; j < k.dim(); ++j) sym = std::max(sym, std::abs(k(i, j) - k(j, i)));
    }
    trace = std::max(trace, std::abs(tr));
    type = std::max(type, (apply(t, b, d.kappa_form[b]) - d.kappa_form[b]).norm());
  }
  out.push_back(make_check("κ symmetric", sym, eps));
  out.push_back(make_check("κ trace-free", trace, eps));
  out.push_back(make_check("A_(1)κ_A of type {1,1} for A", type, eps));
  const Form half = (apply(t, kJ, d.F) + apply(t, kK, d.F)) * 0.5;
  const Form rhs = kaehler_form(t, kI) * -d.mu[kI] - d.kappa_form[kI] + d.alpha;
  out.push_back(make_check("½(J+K)F = -μ_I ω_I - I_(1)κ_I + α", (half - rhs).norm(), eps));
  return out;
}

std::vector<Check> twist_invariance_check(const ExteriorData& bx, const TorsionReport& before,
                                          const ExteriorData& ax, const TorsionReport& after,
                                          const TwistData& d, double tol) {
  std::vector<Check> out;
  const double eps = tol * std::max(before.scale, after.scale);
  const TwistPrediction p = predict_twist(bx, before, d);
  double beta = 0.0, nu3 = 0.0, nu4 = 0.0, b3 = 0.0, bk = 0.0;
  for (int i = 0; i < 3; ++i) {
    beta = std::max(beta, (p.beta[i] - after.beta.beta[i]).norm());
    nu3 = std::max(nu3, (p.nu3[i] - after.beta.nu3[i]).norm());
    nu4 = std::max(nu4, (p.nu4[i] - after.beta.nu4[i]).norm());
    b3 = std::max(b3, (p.beta3[i] - after.beta.beta3[i]).norm());
    bk = std::max(bk, (p.betaK[i] - after.beta.betaK[i]).norm());
  }
  out.push_back(make_check("twisted β", beta, eps));
  out.push_back(make_check("twisted ν3", nu3, eps));
  out.push_back(make_check("twisted ν4", nu4, eps));
  out.push_back(make_check("twisted β^(3)", b3, eps));
  out.push_back(make_check("twisted β^(K)", bk, eps));
  double kappa = 0.0;
  for (const Tensor& k : d.kappa) kappa = std::max(kappa, k.max_abs());
  const double small = tol * (1.0 + d.F.norm());
  if (kappa <= small) {
    double diff = (before.psi3 - after.psi3).norm();
    for (int b = 0; b < 3; ++b)
      diff = std::max({diff, (before.psi3_a[b] - after.psi3_a[b]).norm(),
                       (before.psiK_a[b] - after.psiK_a[b]).norm()});
    out.push_back(make_check("ξ33, ξ3H and ξK3 unchanged", diff, eps));
    const bool s2e = std::max({std::abs(d.mu[0]), std::abs(d.mu[1]), std::abs(d.mu[2])}) <= small;
    if (s2e) {
      double e3 = 0.0;
      for (int b = 0; b < 3; ++b)
        e3 = std::max(e3, ((before.theta_a[b] - before.theta) - (after.theta_a[b] - after.theta)).norm());
      out.push_back(make_check("ξE3 unchanged for F in S²E", e3, eps));
    }
    // With X⌟F = 0 the condition on the EH part reads Σ μ_A A X♭ = 0.
    const Form xf = Form::from_vector(d.X);
    Form s(bx.dim(), 1);
    for (int b = 0; b < 3; ++b) s += apply(bx.triple, b, xf) * d.mu[b];
    if (s.norm() <= small)
      out.push_back(make_check("ξEH unchanged", (before.theta - after.theta).norm(), eps));
  }
  Form unchanged(ax.dim(), 2);
  for (int b = 0; b < 3; ++b) unchanged += ax.omega[b] - bx.omega[b];
  out.push_back(make_check("Kähler forms unchanged", unchanged.norm(), eps));
  return out;
}

SkewConnectionResult skew_connection_check(const ExteriorData& x, const Form& T, double tol) {
  const int d = x.dim();
  std::array<Tensor, 3> target;
  std::array<Tensor, 3> w;
  for (int a = 0; a < 3; ++a) {
    // (∇̃_X ω_A)(Y, Z) = (∇_X ω_A)(Y, Z) - ½T(X, AY, Z) - ½T(X, Y, AZ).
    target[a] = nabla_omega(x, a) + (act_slot(x.op(a), 2, T) + act_slot(x.op(a), 3, T)) * 0.5;
    w[a] = to_tensor(x.omega[a]);
  }
  // In the equation for A the unknown γ_C multiplies ω_B and γ_B multiplies -ω_C.
  auto basis = [&](int eq, int unknown, int y, int z) {
    if (unknown == prev(eq)) return w[next(eq)](y, z);
    if (unknown == next(eq)) return -w[prev(eq)](y, z);
    return 0.0;
  };
  SkewConnectionResult res;
  std::array<Vec, 3> g{Vec(d, 0.0), Vec(d, 0.0), Vec(d, 0.0)};
  double residual = 0.0, scale = 0.0;
  for (int xx = 0; xx < d; ++xx) {
    std::array<std::array<double, 3>, 3> m{};
    std::array<double, 3> rhs{};
    for (int eq = 0; eq < 3; ++eq)
      for (int y = 0; y < d; ++y)
        for (int z = 0; z < d; ++z) {
          const double v = target[eq](xx, y, z);
          scale = std::max(scale, std::abs(v));
          for (int p = 0; p < 3; ++p) {
            const double bp = basis(eq, p, y, z);
            rhs[p] += bp * v;
            for (int q = 0; q < 3; ++q) m[p][q] += bp * basis(eq, q, y, z);
          }
        }
    const double det = det3(m);
    for (int p = 0; p < 3; ++p) {
      auto mp = m;
      for (int r = 0; r < 3; ++r) mp[r][p] = rhs[r];
      g[p][xx] = det3(mp) / det;
    }
    for (int eq = 0; eq < 3; ++eq)
      for (int y = 0; y < d; ++y)
        for (int z = 0; z < d; ++z) {
          double fit = 0.0;
          for (int p = 0; p < 3; ++p) fit += g[p][xx] * basis(eq, p, y, z);
          residual = std::max(residual, std::abs(target[eq](xx, y, z) - fit));
        }
  }
  for (int a = 0; a < 3; ++a) res.gamma[a] = Form::from_vector(g[a]);
  res.residual = residual;
  res.ok = residual <= tol * (1.0 + scale + T.max_abs());
  return res;
}

Form skew_torsion_candidate(const BetaDecomposition& b) {
  Form out(b.beta[0].dim(), 3);
  for (int a = 0; a < 3; ++a) out += (b.betaK[a] - b.beta3[a]) / 6.0;
  return out;
}

}  // namespace qtorsion
