#include "qtorsion/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qtorsion/liealg.hpp"
#include "qtorsion/multilinear.hpp"

namespace qtorsion {

namespace {

int structure_index(const std::string& suffix) {
  for (int a = 0; a < 3; ++a)
    if (suffix == kStructureNames[a]) return a;
  return -1;
}

double max_norm(const std::array<Form, 3>& f) {
  double m = 0.0;
  for (const Form& g : f) m = std::max(m, g.norm());
  return m;
}

std::vector<std::string> default_names(int dim) {
  std::vector<std::string> out;
  for (int k = 1; k <= dim; ++k) out.push_back("e" + std::to_string(k));
  return out;
}

Analysis finish(Analysis an) {
  an.report = torsion_report(an.x, an.tol);
  for (int a = 0; a < 3; ++a) an.gh[a] = classify_gh(an.x, a, an.tol);
  an.hkt = hkt_check(an.x, an.tol);
  an.qkt = qkt_check(an.x, an.report, an.tol);
  an.kh_type = kh_type_check(an.x, an.tol);
  return an;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

Analysis analyze(const AqhModel& m, double tol) {
  Analysis an;
  an.model = m;
  an.x = exterior_data(m);
  an.names = m.algebra().names().empty() ? default_names(m.dim()) : m.algebra().names();
  an.tol = tol;
  an.unimodular = m.algebra().unimodular();
  return finish(std::move(an));
}

Analysis analyze(const ExteriorData& x, const std::vector<std::string>& names, double tol) {
  Analysis an;
  an.x = x;
  an.names = names.empty() ? default_names(x.dim()) : names;
  an.tol = tol;
  return finish(std::move(an));
}

const std::vector<std::string>& quantity_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const char* base : {"domega", "beta", "beta3", "betaK", "betaE", "betaE3", "beta4", "nu3", "nu4",
                             "lambda", "Alambda", "eta", "lee", "theta", "psi3", "psiK"})
      for (const char* a : kStructureNames) out.push_back(std::string(base) + "_" + a);
    for (const char* k : {"theta", "psi3", "psiK", "t", "T", "dOmega", "codOmega"}) out.push_back(k);
    return out;
  }();
  return keys;
}

Form quantity(const Analysis& an, const std::string& key) {
  const TorsionReport& r = an.report;
  const BetaDecomposition& b = r.beta;
  if (key == "theta") return r.theta;
  if (key == "psi3") return r.psi3;
  if (key == "psiK") return r.psiK;
  if (key == "t") return an.qkt.t;
  if (key == "T") return an.qkt.T;
  if (key == "dOmega") return d_omega4(an.x);
  if (key == "codOmega") return codifferential_omega4(an.x);
  const auto us = key.rfind('_');
  const int a = us == std::string::npos ? -1 : structure_index(key.substr(us + 1));
  if (a < 0) throw std::invalid_argument("unknown quantity '" + key + "'");
  const std::string base = key.substr(0, us);
  const Endomorphism& op = an.x.op(a);
  if (base == "domega") return an.x.domega[a];
  if (base == "beta") return b.beta[a];
  if (base == "beta3") return b.beta3[a];
  if (base == "betaK") return b.betaK[a];
  if (base == "betaE") return b.betaE3[a] + b.beta4[a];
  if (base == "betaE3") return b.betaE3[a];
  if (base == "beta4") return b.beta4[a];
  if (base == "nu3") return b.nu3[a];
  if (base == "nu4") return b.nu4[a];
  if (base == "lambda") return r.lambda[a];
  if (base == "Alambda") return act_total(op, r.lambda[a]);
  if (base == "eta") return r.eta[a];
  if (base == "lee") return an.gh[a].lee;
  if (base == "theta") return r.theta_a[a];
  if (base == "psi3") return r.psi3_a[a];
  if (base == "psiK") return r.psiK_a[a];
  throw std::invalid_argument("unknown quantity '" + key + "'");
}

std::vector<Check> identity_checks(const Analysis& an) {
  const ExteriorData& x = an.x;
  const TorsionReport& r = an.report;
  const BetaDecomposition& bd = r.beta;
  const int dim = x.dim();
  const double n = x.n;
  double dw = 0.0;
  for (const Form& f : x.domega) dw = std::max(dw, f.norm());
  const double eps = an.tol * (1.0 + dw + max_norm(bd.beta));
  std::vector<Check> out;

  if (an.model) {
    const LieAlgebra& g = an.model->algebra();
    double dd = 0.0;
    for (int i = 0; i < dim; ++i) {
      dd = std::max(dd, g.d(g.d_basis(i)).max_abs());
      for (int j = i + 1; j < dim; ++j) dd = std::max(dd, g.d(g.d(Form::basis(dim, {i, j}))).max_abs());
    }
    out.push_back(make_check("d² = 0", dd, eps));
  }

  double naddd4r = 0.0, recon = 0.0, ijk = 0.0, cross = 0.0;
  for (int a = 0; a < 3; ++a) {
    const int b = next(a), c = prev(a);
    const Endomorphism& oa = x.op(a);
    naddd4r = std::max(naddd4r, (cal_l(oa, bd.beta[a]) - bd.beta[a]).norm());
    const Form two_dw = act_total(oa, bd.beta[a] - bd.beta[b] - bd.beta[c]);
    recon = std::max(recon, (two_dw - x.domega[a] * 2.0).norm());
    const Form lhs = act_total(oa, lambda_op(x.omega[c], x.domega[b]) + lambda_op(x.omega[b], x.domega[c]));
    const Form rhs = lambda_op(x.omega[c], x.domega[c]) - lambda_op(x.omega[b], x.domega[b]);
    ijk = std::max(ijk, (lhs - rhs).norm());
    cross = std::max(cross, bd.cross_defect[a]);
  }
  out.push_back(make_check("𝓛_A β_A = β_A", naddd4r, eps));
  out.push_back(make_check("2dω_A = A(β_A - β_B - β_C)", recon, eps));
  out.push_back(make_check("AΛ_C dω_B + AΛ_B dω_C = Λ_C dω_C - Λ_B dω_B", ijk, eps));
  out.push_back(make_check("BΛ_B β_A = CΛ_C β_A", cross, eps));

  double split = 0.0;
  for (int a = 0; a < 3; ++a)
    split = std::max(split, (bd.beta3[a] + bd.betaK[a] + bd.betaE3[a] + bd.beta4[a] - bd.beta[a]).norm());
  out.push_back(make_check("β_A = β^(3) + β^(K) + β^(E)_3 + β_4", split, eps));

  std::array<Tensor, 3> nabla;
  double naddd34 = 0.0, gray = 0.0, nij_alt = 0.0, nij_oracle = 0.0, koszul = 0.0, alternation = 0.0;
  for (int a = 0; a < 3; ++a) {
    nabla[a] = nabla_omega(x, a);
    naddd34 = std::max(naddd34, (nabla[a] - nabla_omega_alt(x, a)).max_abs());
    const Tensor nij = nijenhuis_from_dw(x, a);
    gray = std::max(gray, (nabla_omega_gray(x, nij, a) - nabla[a]).max_abs());
    nij_alt = std::max(nij_alt, (nij - nijenhuis_from_dw_alt(x, a)).max_abs());
    Tensor alt(dim, 3);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) alt(i, j, k) = nabla[a](i, j, k) + nabla[a](j, k, i) + nabla[a](k, i, j);
    alternation = std::max(alternation, (alt - to_tensor(x.domega[a])).max_abs());
    if (an.model) {
      nij_oracle = std::max(nij_oracle, (nij - nijenhuis_oracle(*an.model, a)).max_abs());
      koszul = std::max(koszul, (nabla[a] - nabla_omega_koszul(*an.model, a)).max_abs());
    }
  }
  out.push_back(make_check("two expansions of ∇ω_A agree", naddd34, eps));
  out.push_back(make_check("2∇ω_A = dω_A - A_(23)dω_A - A_(3)N_A", gray, eps));
  out.push_back(make_check("two expansions of N_A agree", nij_alt, eps));
  out.push_back(make_check("cyclic sum of ∇ω_A is dω_A", alternation, eps));
  out.push_back(make_check("(∇ω_I)(JY,KZ) + (∇ω_J)(KY,IZ) + (∇ω_K)(IY,JZ) = 0",
                           sym_nabla_defect(x.triple, nabla), eps));
  if (an.model) {
    out.push_back(make_check("N_A from dω equals N_A from brackets", nij_oracle, eps));
    out.push_back(make_check("∇ω_A from dω equals the Koszul derivative", koszul, eps));
  }

  double ladd = (lambda_forms_alt(x)[0] - r.lambda[0]).norm();
  for (int a = 1; a < 3; ++a) ladd = std::max(ladd, (lambda_forms_alt(x)[a] - r.lambda[a]).norm());
  out.push_back(make_check("two expressions for λ_A agree", ladd, eps));
  if (an.model) {
    const auto lk = lambda_forms_koszul(*an.model);
    double d = 0.0;
    for (int a = 0; a < 3; ++a) d = std::max(d, (lk[a] - r.lambda[a]).norm());
    out.push_back(make_check("λ_A = (1/2n)⟨∇ω_B, ω_C⟩", d, eps));
  }
  const auto lnu = lambda_from_nu(x.triple, x.n, bd.nu3, bd.nu4);
  const auto eb = eta_from_beta(x, bd.beta);
  double dl = 0.0, de = 0.0;
  for (int a = 0; a < 3; ++a) {
    dl = std::max(dl, (lnu[a] - r.lambda[a]).norm());
    de = std::max(de, (eb[a] - r.eta[a]).norm());
  }
  out.push_back(make_check("λ_A from ν one-forms", dl, eps));
  out.push_back(make_check("η_A from ν one-forms and from β_A agree", de, eps));

  double r3 = 0.0, rk = 0.0, rn3 = 0.0, rn4 = 0.0, l3 = 0.0;
  Form sum3 = r.psi3_a[0] + r.psi3_a[1] + r.psi3_a[2];
  Form sumk = r.psiK_a[0] + r.psiK_a[1] + r.psiK_a[2];
  for (int a = 0; a < 3; ++a) {
    const int b = next(a), c = prev(a);
    const Endomorphism& oa = x.op(a);
    const Form b3 = r.psi3 * 6.0 + cal_l(oa, r.psi3) * 2.0 - r.psi3_a[a] * 8.0;
    r3 = std::max(r3, (b3 - bd.beta3[a]).norm());
    rk = std::max(rk, (r.psiK * -16.0 - r.psiK_a[a] * 2.0 - bd.betaK[a]).norm());
    const Form al = act_total(oa, r.lambda[a]);
    const Form nu3 = al * 2.0 + (r.theta * (3.0 * (n - 1.0)) + r.theta_a[a] * (n + 1.0)) * (4.0 / n);
    rn3 = std::max(rn3, (nu3 - bd.nu3[a]).norm());
    const Form plus = act_total(x.op(b), r.lambda[b]) + act_total(x.op(c), r.lambda[c]);
    const Form nu4 = plus * (2.0 * n - 1.0) + al * 2.0 + (r.theta - r.theta_a[a]) * (6.0 * (n - 1.0) * (2.0 * n + 1.0) / n);
    rn4 = std::max(rn4, (nu4 - bd.nu4[a]).norm());
    l3 = std::max(l3, (cal_l(oa, r.psi3_a[a]) - r.psi3_a[a]).norm());
  }
  out.push_back(make_check("β^(3)_A = 6ψ^(3) + 2𝓛_Aψ^(3) - 8ψ^(3)_A", r3, eps));
  out.push_back(make_check("β^(K)_A = -16ψ^(K) - 2ψ^(K)_A", rk, eps));
  out.push_back(make_check("ν^A_3 = 2Aλ_A + (4/n)(3(n-1)θ + (n+1)θ_A)", rn3, eps));
  out.push_back(make_check("ν^A_4 = (2n-1)λ^+_A + 2Aλ_A + 6(n-1)(2n+1)(θ - θ_A)/n", rn4, eps));
  out.push_back(make_check("3θ = θ_I + θ_J + θ_K",
                           (r.theta * 3.0 - r.theta_a[0] - r.theta_a[1] - r.theta_a[2]).norm(), eps));
  out.push_back(make_check("Σ ψ^(K)_A = 0", sumk.norm(), eps));
  out.push_back(make_check("Σ ψ^(3)_A = 0", sum3.norm(), eps));
  out.push_back(make_check("𝓛_A ψ^(3)_A = ψ^(3)_A", l3, eps));
  if (x.n == 2) {
    double z = r.psi3.norm();
    for (const Form& f : r.psi3_a) z = std::max(z, f.norm());
    out.push_back(make_check("ψ^(3) and ψ^(3)_A vanish in dimension 8", z, eps));
  }

  // ξ assembled from the exterior derivatives.
  const Tensor xi = xi_direct(x);
  double quat = 0.0, traces = 0.0, aqh = 0.0;
  for (int xx = 0; xx < dim; ++xx) {
    // M(z, y) = ⟨e_z, ξ_X e_y⟩.
    Endomorphism mx(dim);
    for (int y = 0; y < dim; ++y)
      for (int z = 0; z < dim; ++z) mx(z, y) = xi(xx, y, z);
    Endomorphism s(dim);
    for (int a = 0; a < 3; ++a) s = s + x.op(a) * mx * x.op(a);
    quat = std::max(quat, (s - mx).max_abs());
    for (int a = 0; a < 3; ++a) {
      double tr = 0.0;
      for (int i = 0; i < dim; ++i)
        for (int z = 0; z < dim; ++z) tr += mx(z, i) * x.op(a)(z, i);
      traces = std::max(traces, std::abs(tr));
      const int b = next(a), c = prev(a);
      const Vec lb = r.lambda[b].to_vector(), lc = r.lambda[c].to_vector();
      // (∇_X A) = λ_C(X) B - λ_B(X) C - ξ_X A + A ξ_X, read as ⟨e_y, (∇_X A) e_z⟩.
      const Endomorphism na = x.op(b) * lc[xx] - x.op(c) * lb[xx] - mx * x.op(a) + x.op(a) * mx;
      for (int y = 0; y < dim; ++y)
        for (int z = 0; z < dim; ++z) aqh = std::max(aqh, std::abs(na(y, z) - nabla[a](xx, y, z)));
    }
  }
  out.push_back(make_check("Σ_A Aξ_X A = ξ_X", quat, eps));
  out.push_back(make_check("⟨ξ_X e_i, A e_i⟩ = 0", traces, eps));
  out.push_back(make_check("∇A = λ_C⊗B - λ_B⊗C - [ξ, A]", aqh, eps));
  return out;
}

std::vector<std::string> tolerance_warnings(const Analysis& an) {
  std::vector<std::string> out;
  if (an.tol < 1e-13)
    out.push_back("tolerance " + format_double(an.tol) + " is below the roundoff of the computation");
  auto near = [&](double norm, double threshold) { return norm > threshold / 100.0 && norm < threshold * 100.0; };
  const TorsionReport& r = an.report;
  for (int c = 0; c < 6; ++c)
    if (near(r.norms[c], an.tol * r.scale))
      out.push_back(std::string("component ") + kModuleNames[c] + " norm " + format_double(r.norms[c]) +
                    " is within two decades of its threshold");
  for (int a = 0; a < 3; ++a) {
    const double threshold = an.tol * (1.0 + an.x.domega[a].norm() + an.gh[a].nijenhuis.norm());
    for (int b = 0; b < 4; ++b)
      if (near(an.gh[a].norms[b], threshold))
        out.push_back(std::string("Gray–Hervella W") + std::to_string(b + 1) + " of " + kStructureNames[a] +
                      " norm " + format_double(an.gh[a].norms[b]) + " is within two decades of its threshold");
  }
  return out;
}

TwistRun run_twist(const AqhModel& m, const Analysis& before, const Form& F, const Vec& X, double a) {
  TwistRun run;
  run.data = decompose_curvature(m, F, X, a);
  run.checks = curvature_checks(m, run.data, before.tol);
  run.model = twist(m, run.data);
  run.after = analyze(run.model, before.tol);
  for (Check c : twist_invariance_check(before.x, before.report, run.after.x, run.after.report, run.data, before.tol))
    run.checks.push_back(c);
  return run;
}

ConformalRun run_conformal(const LieAlgebra& algebra, const Analysis& before, const Form& dsigma) {
  ConformalRun run;
  const double tol = before.tol;
  run.shifted = conformal_shift(algebra, before.x.triple, dsigma, before.report);
  run.after = analyze(conformal_data(before.x, dsigma), before.names, tol);
  const TorsionReport& shifted = run.shifted;
  const TorsionReport& direct = run.after.report;
  double diff = (shifted.theta - direct.theta).max_abs();
  for (int a = 0; a < 3; ++a) {
    diff = std::max({diff, (shifted.beta.beta[a] - direct.beta.beta[a]).max_abs(),
                     (shifted.beta.nu3[a] - direct.beta.nu3[a]).max_abs(),
                     (shifted.beta.nu4[a] - direct.beta.nu4[a]).max_abs(),
                     (shifted.beta.betaE3[a] - direct.beta.betaE3[a]).max_abs(),
                     (shifted.beta.beta4[a] - direct.beta.beta4[a]).max_abs(),
                     (shifted.lambda[a] - direct.lambda[a]).max_abs(),
                     (shifted.theta_a[a] - direct.theta_a[a]).max_abs(),
                     (shifted.eta[a] - direct.eta[a]).max_abs()});
    const Form lee_shift = before.gh[a].lee - dsigma * (2.0 * (2.0 * before.x.n - 1.0));
    run.checks.push_back(make_check(std::string("Lee form of ") + kStructureNames[a] + " shifts by -2(2n-1)dσ",
                                    (run.after.gh[a].lee - lee_shift).max_abs(), tol * (1.0 + lee_shift.max_abs())));
  }
  run.checks.push_back(
      make_check("transformation laws agree with the recomputed torsion", diff, tol * (1.0 + direct.scale)));
  bool kept = shifted.flags == direct.flags;
  for (int c = 0; c < 6; ++c)
    if (c != kXiEH && before.report.flags[c] != direct.flags[c]) kept = false;
  run.checks.push_back(make_flag_check("flags other than ξEH preserved", kept));
  return run;
}

}  // namespace qtorsion
