#include "qtorsion/classify.hpp"

#include <algorithm>

#include "qtorsion/multilinear.hpp"

namespace qtorsion {

namespace {

Form lambda_d(const ExteriorData& x, int on, int of) { return lambda_op(x.omega[on], x.domega[of]); }

Form apply(const ExteriorData& x, int a, const Form& f) { return act_total(x.op(a), f); }

double max_of(std::initializer_list<double> v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

std::string classify_aqh(const TorsionReport& report) { return module_label(report.flags); }

std::string gh_label(GhClass cls) {
  if (cls == 0) return "Kähler";
  std::string digits;
  for (int b = 0; b < 4; ++b) {
    if (!(cls & (1u << b))) continue;
    if (!digits.empty()) digits += "+";
    digits += std::to_string(b + 1);
  }
  if (digits.size() == 1) return "W_" + digits;
  return "W_{" + digits + "}";
}

Form lee_form(const ExteriorData& x, int a) { return -lambda_d(x, a, a); }

Form codifferential_omega4(const ExteriorData& x) {
  Form out(x.dim(), 3);
  for (int a = 0; a < 3; ++a) {
    // d*ω_A = -A(A d*ω_A) on one-forms.
    Form dstar = -apply(x, a, lee_form(x, a));
    out += (wedge(dstar, x.omega[a]) - apply(x, a, x.domega[a])) * 2.0;
  }
  return out;
}

Form d_omega4(const ExteriorData& x) {
  Form out(x.dim(), 5);
  for (int a = 0; a < 3; ++a) out += wedge(x.domega[a], x.omega[a]) * 2.0;
  return out;
}

namespace {

// The tensors entering the table rows, computed once per structure.
struct TableTerms {
  Tensor dw, an, a_alt, lee_part, nij;
  double scale = 0.0;
  bool n0 = false, dw0 = false, lee0 = false, alt0 = false, alt3n = false;

  TableTerms(const ExteriorData& x, const Tensor& nijenhuis, int a, double tol) : nij(nijenhuis) {
    const Endomorphism& op = x.op(a);
    scale = tol * (1.0 + x.domega[a].norm() + nij.norm());
    dw = to_tensor(x.domega[a]);
    const Form alt = to_form(cyclic_sum(nij));
    an = act_slots(op, {1, 2, 3}, nij);
    a_alt = to_tensor(act_total(op, alt));
    const Form lee = lee_form(x, a);
    lee_part = to_tensor(wedge(lee, x.omega[a])) * (-1.0 / (2.0 * x.n - 1.0));
    n0 = small(nij);
    dw0 = small(dw);
    lee0 = lee.norm() <= scale;
    alt0 = alt.norm() <= scale;
    alt3n = small(to_tensor(alt) - nij * 3.0);
  }

  bool small(const Tensor& t) const { return t.norm() <= scale; }

  bool holds(GhClass cls) const {
    switch (cls) {
      case 0: return n0 && dw0;
      case kW1: return small(dw + an * 0.75);
      case kW2: return dw0;
      case kW3: return n0 && lee0;
      case kW4: return n0 && small(dw - lee_part);
      case kW1 | kW2: return small(dw + a_alt * 0.25);
      case kW1 | kW3: return alt3n && lee0;
      case kW1 | kW4: return small(dw + an * 0.75 - lee_part);
      case kW2 | kW3: return alt0 && lee0;
      case kW2 | kW4: return small(dw - lee_part);
      case kW3 | kW4: return n0;
      case kW1 | kW2 | kW3: return lee0;
      case kW1 | kW2 | kW4: return small(dw + a_alt * 0.25 - lee_part);
      case kW1 | kW3 | kW4: return alt3n;
      case kW2 | kW3 | kW4: return alt0;
      default: return true;
    }
  }
};

}  // namespace

bool gh_table_condition(const ExteriorData& x, const Tensor& nij, int a, GhClass cls, double tol) {
  return TableTerms(x, nij, a, tol).holds(cls);
}

GhReport classify_gh(const ExteriorData& x, int a, double tol) {
  GhReport r;
  r.nijenhuis = nijenhuis_from_dw(x, a);
  r.nij_alt = to_form(cyclic_sum(r.nijenhuis));
  r.lee = lee_form(x, a);
  const Form w3 = x.domega[a] + act_total(x.op(a), r.nij_alt) * 0.25 +
                  wedge(r.lee, x.omega[a]) / (2.0 * x.n - 1.0);
  r.norms = {r.nij_alt.norm(), (r.nijenhuis - to_tensor(r.nij_alt) * (1.0 / 3.0)).norm(), w3.norm(), r.lee.norm()};
  const double scale = tol * (1.0 + x.domega[a].norm() + r.nijenhuis.norm());
  for (int b = 0; b < 4; ++b) {
    r.flags[b] = r.norms[b] > scale;
    if (r.flags[b]) r.cls |= 1u << b;
  }
  r.label = gh_label(r.cls);
  const TableTerms table(x, r.nijenhuis, a, tol);
  r.table_consistent = table.holds(r.cls);
  for (int b = 0; b < 4; ++b)
    if ((r.cls & (1u << b)) && table.holds(r.cls & ~(1u << b)))
      r.table_consistent = false;
  return r;
}

HktResult hkt_check(const ExteriorData& x, double tol) {
  HktResult r;
  const std::array<Form, 3> be = betas(x);
  double bmax = 0.0;
  for (const Form& b : be) bmax = std::max(bmax, b.norm());
  const double scale = tol * (1.0 + bmax);
  r.defect = max_of({(be[0] - be[1]).norm(), (be[1] - be[2]).norm(), (be[2] - be[0]).norm()});
  r.is_hkt = r.defect <= scale;
  const double jk = (apply(x, kJ, x.domega[kJ]) - apply(x, kK, x.domega[kK])).norm();
  r.alternative = jk <= scale && nijenhuis_from_dw(x, kJ).norm() <= scale;
  return r;
}

double kh_type_defect(const ExteriorData& x) {
  const double n = x.n;
  double worst = 0.0;
  for (int a = 0; a < 3; ++a) {
    const int b = next(a), c = prev(a);
    Form lhs = -apply(x, a, lambda_d(x, c, b));
    Form rhs = lee_form(x, a) * (n - 1.0) - lee_form(x, b) * n - lee_form(x, c) * (n - 1.0);
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

bool kh_type_check(const ExteriorData& x, double tol) {
  double dmax = 0.0;
  for (const Form& d : x.domega) dmax = std::max(dmax, d.norm());
  return kh_type_defect(x) <= tol * (1.0 + dmax);
}

QktReport qkt_check(const ExteriorData& x, const TorsionReport& rep, double tol) {
  QktReport q;
  const double n = x.n;
  const double eps = tol * rep.scale;
  q.is_hkt = hkt_check(x, tol).is_hkt;
  for (int c : {kXi33, kXiK3, kXiE3, kXi3H}) {
    if (rep.flags[c]) {
      q.violation = kComponentNames[c];
      break;
    }
  }
  q.is_qkt = q.violation.empty();
  auto check = [&](const std::string& name, double residual, bool informational = false) {
    q.checks.push_back(make_check(name, residual, eps, informational));
  };
  check("hkt implies qkt", (q.is_hkt && !q.is_qkt) ? 1.0 : 0.0);
  if (!q.is_qkt) return q;

  // Aγ_A from both expressions.
  std::array<Form, 3> agamma;
  double gamma_routes = 0.0;
  for (int a = 0; a < 3; ++a) {
    const int b = next(a), c = prev(a);
    Form first = (lambda_d(x, b, b) + apply(x, a, lambda_d(x, c, b))) / (2.0 * (n - 1.0));
    Form second = (lambda_d(x, c, c) - apply(x, a, lambda_d(x, b, c))) / (2.0 * (n - 1.0));
    gamma_routes = std::max(gamma_routes, (first - second).norm());
    agamma[a] = first;
    q.gamma[a] = -apply(x, a, first);
  }
  check("gamma expressions agree", gamma_routes);

  // T from A dω_A and from β_A, for each A.
  std::array<Form, 3> t_id, t_beta;
  for (int a = 0; a < 3; ++a) {
    const int b = next(a), c = prev(a);
    t_id[a] = apply(x, a, x.domega[a]) + wedge(apply(x, b, agamma[c]), x.omega[b]) +
              wedge(apply(x, c, agamma[b]), x.omega[c]);
    Form plus = agamma[b] + agamma[c];
    t_beta[a] = (rep.beta.beta[a] + wedge(apply(x, b, agamma[a]), x.omega[b]) +
                 wedge(apply(x, c, agamma[a]), x.omega[c]) + wedge(apply(x, a, plus), x.omega[a])) /
                2.0;
  }
  q.T = t_id[kI];
  double t_agree = 0.0;
  for (int a = 0; a < 3; ++a)
    t_agree = max_of({t_agree, (t_id[a] - q.T).norm(), (t_beta[a] - q.T).norm()});
  check("torsion form from A dω_A and from β_A, cyclically invariant", t_agree);

  const Form dsO = codifferential_omega4(x);
  const Form theta_dso = apply(x, kI, lambda_op(x.omega[kI], dsO));
  Form closed = dsO * (-1.0 / 6.0);
  for (int a = 0; a < 3; ++a)
    closed -= wedge(apply(x, a, theta_dso), x.omega[a]) / (12.0 * (n - 1.0));
  check("torsion form from d*Ω", (closed - q.T).norm());

  const HSplit split = project_h_s3h(x.op(kI), x.op(kJ), x.op(kK), q.T);
  check("torsion form in the +3 eigenspace", split.s3h.norm());
  const Form lt = cal_l(x.op(kI), x.op(kJ), x.op(kK), q.T);
  check("torsion form in the -3 eigenspace", (lt + q.T * 3.0).norm(), true);

  q.t = apply(x, kI, lambda_op(x.omega[kI], q.T));
  double t_routes = 0.0;
  for (int a = 1; a < 3; ++a) t_routes = std::max(t_routes, (apply(x, a, lambda_op(x.omega[a], q.T)) - q.t).norm());
  check("torsion one-form independent of A", t_routes);

  // Torsion one-form chain, anchored on the trace of ξ. Λ on 3-forms here is twice the
  // contraction the chain is usually quoted with, and ∗(∗dΩ∧Ω) carries a factor -2.
  const Form lhs = q.t * (-3.0 * (n - 1.0) / (4.0 * n));
  const Tensor xi = xi_direct(x);
  Vec trace(x.dim(), 0.0);
  for (int i = 0; i < x.dim(); ++i)
    for (int z = 0; z < x.dim(); ++z) trace[z] += xi(i, i, z);
  double chain = (Form::from_vector(trace) - lhs).norm();
  for (int a = 0; a < 3; ++a) {
    chain = std::max(chain, (apply(x, a, rep.eta[a]) * -1.5 - lhs).norm());
    chain = std::max(chain, (apply(x, a, lambda_op(x.omega[a], dsO)) * (-3.0 / (16.0 * n)) - lhs).norm());
  }
  const Form omega4 = fundamental_form(x.triple);
  const Form hodge = hodge_star(wedge(hodge_star(d_omega4(x)), omega4)) / (-32.0 * n);
  chain = std::max(chain, (hodge - lhs).norm());
  check("torsion one-form chain", chain);

  double lg = 0.0, coder = 0.0, diff = 0.0, ddd1 = 0.0, ddd2 = 0.0, remark = 0.0;
  for (int a = 0; a < 3; ++a) {
    const int b = next(a), c = prev(a);
    const Form alam_b = apply(x, b, rep.lambda[b]), alam_c = apply(x, c, rep.lambda[c]);
    const Form agb = agamma[b], agc = agamma[c];
    lg = std::max(lg, (rep.lambda[a] - q.gamma[a] + apply(x, a, q.t) / (2.0 * n)).norm());
    const Form lee_a = lee_form(x, a);
    coder = max_of({coder, (lee_a - q.t - agb - agc).norm(),
                    (lee_a - alam_b - alam_c - apply(x, a, rep.eta[a]) * 2.0).norm()});
    const Form lee_diff = lee_form(x, b) - lee_form(x, c);
    diff = max_of({diff, (agb - agc + lee_diff).norm(), (alam_b - alam_c + lee_diff).norm()});
    const Form base = lambda_d(x, b, b) - lambda_d(x, c, c);
    ddd1 = std::max(ddd1, (apply(x, b, lambda_d(x, c, a)) + apply(x, c, lambda_d(x, b, a)) +
                           base * (2.0 * (n - 1.0)))
                              .norm());
    ddd2 = std::max(ddd2, (apply(x, b, lambda_d(x, a, c)) + apply(x, c, lambda_d(x, a, b)) -
                           base * (2.0 * n - 1.0))
                              .norm());
    const Form plus = agb + agc;
    remark = max_of({remark, rep.beta.beta3[a].norm(), (rep.beta.betaK[a] - rep.beta.betaK[b]).norm(),
                     (rep.beta.nu3[a] - agamma[a] * 2.0 - q.t * (4.0 / (2.0 * n + 1.0))).norm(),
                     (rep.beta.nu4[a] - agamma[a] * 2.0 - plus * (2.0 * n - 1.0) - q.t * 2.0).norm()});
  }
  check("λ_A - γ_A = -At/2n", lg);
  check("Lee forms from γ and from λ, η", coder);
  check("differences of γ, λ and Lee forms", diff);
  check("first contraction identity", ddd1);
  check("second contraction identity", ddd2);
  check("β and ν one-forms of a QKT structure", remark);

  // Integrability of each A against the equivalent conditions.
  for (int a = 0; a < 3; ++a) {
    const int b = next(a), c = prev(a);
    std::array<double, 7> r{
        nijenhuis_from_dw(x, a).norm(),
        (lee_form(x, b) - lee_form(x, c)).norm(),
        (apply(x, b, rep.lambda[b]) - apply(x, c, rep.lambda[c])).norm(),
        (agamma[b] - agamma[c]).norm(),
        (lambda_d(x, c, b) + lambda_d(x, b, c)).norm(),
        (apply(x, b, lambda_d(x, c, a)) + apply(x, c, lambda_d(x, b, a))).norm(),
        (apply(x, b, lambda_d(x, a, c)) + apply(x, c, lambda_d(x, a, b))).norm(),
    };
    bool first = r[0] <= eps, same = true;
    for (double v : r) same = same && ((v <= eps) == first);
    q.checks.push_back(make_flag_check(std::string("integrability conditions of ") + kStructureNames[a] +
                                           " agree",
                                       same));
  }
  return q;
}

}  // namespace qtorsion
