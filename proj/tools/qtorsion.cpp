#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qtorsion/corpus.hpp"
#include "qtorsion/document.hpp"

using namespace qtorsion;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kExpectationFailure = 1;
constexpr int kInputError = 2;

struct Options {
  bool json = false;
  std::optional<double> tol;
  std::optional<double> m, k, n;
};

// A model given either as a file or as the name of an embedded example.
struct Loaded {
  AqhModel model;
  double tol = 1e-9;
};

Variables example_params(const Options& o) {
  Variables v;
  if (o.m) v["m"] = *o.m;
  if (o.k) v["k"] = *o.k;
  if (o.n) v["n"] = *o.n;
  return v;
}

Loaded load(const std::string& source, const Options& o) {
  Loaded out;
  std::ifstream in(source);
  if (in) {
    std::stringstream buf;
    buf << in.rdbuf();
    ModelDocument doc = read_model(buf.str());
    out.model = doc.model;
    if (doc.tolerance) out.tol = *doc.tolerance;
  } else {
    const auto names = example_names();
    if (std::find(names.begin(), names.end(), source) == names.end())
      throw DocumentError("no such file or example", source);
    out.model = build_example(source, example_params(o));
  }
  if (o.tol) out.tol = *o.tol;
  return out;
}

Form parse_cli_form(const std::string& text, const Analysis& an, int degree, const std::string& option) {
  try {
    return parse_form(text, an.names, degree, {}, &an.x.triple);
  } catch (const ParseError& e) {
    throw DocumentError(e.what(), option);
  }
}

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_analyze(const std::string& source, const Options& o) {
  const Loaded l = load(source, o);
  const json report = report_json(analyze(l.model, l.tol));
  emit(o, report, report_text(report));
  return kOk;
}

int cmd_example(const std::string& name, const Options& o) {
  const Variables params = example_params(o);
  const AqhModel m = build_example(name, params);
  const Analysis an = analyze(m, o.tol.value_or(1e-9));
  const json report = report_json(an);
  const json expectations = checks_json(example_checks(name, params, an));
  emit(o, {{"example", name}, {"parameters", params}, {"report", report}, {"expectations", expectations}},
       report_text(report) + "\nexpectations:\n" + checks_text(expectations));
  return all_pass(example_checks(name, params, an)) ? kOk : kExpectationFailure;
}

int cmd_list(const Options& o) {
  json examples = json::array(), scenarios = json::array();
  std::ostringstream os;
  os << "examples:\n";
  for (const std::string& name : example_names()) {
    const Variables d = example_defaults(name);
    examples.push_back({{"name", name}, {"parameters", d}, {"description", example_description(name)}});
    std::string params;
    for (const auto& [k, v] : d) params += " --" + k + " " + json(v).dump();
    os << "  " << name << params << "\n      " << example_description(name) << "\n";
  }
  os << "scenarios:\n";
  for (const std::string& name : scenario_names()) {
    scenarios.push_back({{"name", name}, {"description", scenario_description(name)}});
    os << "  " << name << "\n      " << scenario_description(name) << "\n";
  }
  emit(o, {{"examples", examples}, {"scenarios", scenarios}}, os.str());
  return kOk;
}

int cmd_twist(const std::string& source, const std::string& form, const std::string& vector, double a,
              const Options& o) {
  const Loaded l = load(source, o);
  const Analysis before = analyze(l.model, l.tol);
  const Form F = parse_cli_form(form, before, 2, "--form");
  const auto it = std::find(before.names.begin(), before.names.end(), vector);
  if (it == before.names.end()) throw DocumentError("unknown coframe name '" + vector + "'", "--vector");
  Vec X(before.x.dim(), 0.0);
  X[it - before.names.begin()] = 1.0;
  const TwistRun run = run_twist(l.model, before, F, X, a);

  json kappa;
  for (int s = 0; s < 3; ++s) kappa[kStructureNames[s]] = render_form(run.data.kappa_form[s], before.names);
  const json data = {{"mu", run.data.mu}, {"alpha", render_form(run.data.alpha, before.names)}, {"kappa", kappa}};
  const json b = report_json(before), w = report_json(run.after), checks = checks_json(run.checks);
  std::ostringstream os;
  os << "before:\n" << report_text(b) << "\ncurvature: mu = (" << json(run.data.mu[0]).dump() << ", "
     << json(run.data.mu[1]).dump() << ", " << json(run.data.mu[2]).dump() << ")\n  alpha = " << data["alpha"].get<std::string>()
     << "\n";
  for (int s = 0; s < 3; ++s) os << "  kappa_" << kStructureNames[s] << " = " << kappa[kStructureNames[s]].get<std::string>() << "\n";
  os << "\nafter:\n" << report_text(w) << "\ntwist findings:\n" << checks_text(checks);
  emit(o, {{"before", b}, {"curvature", data}, {"after", w}, {"checks", checks}}, os.str());
  return all_pass(run.checks) ? kOk : kExpectationFailure;
}

int cmd_conformal(const std::string& source, const std::string& dsigma, const Options& o) {
  const Loaded l = load(source, o);
  const Analysis before = analyze(l.model, l.tol);
  const ConformalRun run = run_conformal(l.model.algebra(), before, parse_cli_form(dsigma, before, 1, "--dsigma"));
  const json b = report_json(before), w = report_json(run.after), checks = checks_json(run.checks);
  emit(o, {{"before", b}, {"after", w}, {"checks", checks}},
       "before:\n" + report_text(b) + "\nafter:\n" + report_text(w) + "\nconformal findings:\n" + checks_text(checks));
  return all_pass(run.checks) ? kOk : kExpectationFailure;
}

// Tallies checks per suite; informational checks are reported but never counted as failures.
struct Tally {
  json suites = json::array();
  int passed = 0, failed = 0;
  std::ostringstream text;

  void add(const std::string& suite, const std::vector<Check>& checks) {
    int p = 0, f = 0;
    json failures = json::array();
    for (const Check& c : checks) {
      if (c.informational) continue;
      if (c.pass) {
        ++p;
      } else {
        ++f;
        failures.push_back({{"name", c.name}, {"residual", c.residual}});
      }
    }
    passed += p;
    failed += f;
    suites.push_back({{"suite", suite}, {"passed", p}, {"failed", f}, {"failures", failures}});
    text << (f == 0 ? "PASS  " : "FAIL  ") << suite << "  " << p << "/" << (p + f) << "\n";
    for (const json& x : failures)
      text << "        " << x["name"].get<std::string>() << "  residual " << x["residual"].dump() << "\n";
  }
};

std::string describe(const std::string& name, const Variables& v) {
  std::string s = name;
  for (const auto& [k, x] : v) s += " " + k + "=" + json(x).dump();
  return s;
}

int cmd_selftest(const Options& o) {
  const double tol = o.tol.value_or(1e-9);
  Tally t;
  for (const std::string& name : example_names()) {
    for (const Variables& v : example_sweep(name)) {
      const Analysis an = analyze(build_example(name, v), tol);
      const std::string label = describe(name, v);
      t.add(label + ": expectations", example_checks(name, v, an));
      t.add(label + ": identities", identity_checks(an));
      if (an.qkt.is_qkt) t.add(label + ": QKT", an.qkt.checks);
    }
  }
  for (const std::string& name : scenario_names())
    for (const ScenarioResult& r : run_scenario(name, tol)) {
      t.add("scenario " + r.name, r.checks);
      t.add("scenario " + r.name + ": identities after", identity_checks(r.after));
    }

  // Doubling [e1, e2] on the Salamon algebra breaks Jacobi.
  const AqhModel salamon = build_example("salamon");
  std::vector<Bracket> corrupted = salamon.algebra().brackets();
  corrupted.front().c *= 2.0;
  bool rejected = false;
  try {
    LieAlgebra(salamon.dim(), corrupted);
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  t.add("corrupted structure constant", {make_flag_check("Jacobi failure reported", rejected)});

  const Analysis tiny = analyze(build_example("s3xt9"), 1e-18);
  t.add("absurdly small tolerance", {make_flag_check("flagged as tolerance-sensitive", !tolerance_warnings(tiny).empty())});

  std::ostringstream os;
  os << t.text.str() << "\n" << t.passed << " passed, " << t.failed << " failed\n";
  emit(o, {{"suites", t.suites}, {"passed", t.passed}, {"failed", t.failed}}, os.str());
  return t.failed == 0 ? kOk : kExpectationFailure;
}

int cmd_export(const std::string& name, const Options& o) {
  const AqhModel m = build_example(name, example_params(o));
  ModelDocument doc{m, m.algebra().names(), o.tol};
  std::cout << model_json(doc).dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intrinsic torsion of invariant almost quaternion-Hermitian structures on Lie groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_option("--tol", o.tol, "Zero-test tolerance")->check(CLI::PositiveNumber);

  std::string source, name, form, vector, dsigma;
  double a = 1.0;
  auto add_params = [&](CLI::App* c) {
    c->add_option("--m", o.m, "Example parameter m");
    c->add_option("--k", o.k, "Example parameter k");
    c->add_option("--n", o.n, "Example parameter n");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Analyse a model file or embedded example");
  analyze_cmd->add_option("model", source, "Model JSON path or example name")->required();
  add_params(analyze_cmd);
  auto* example_cmd = app.add_subcommand("example", "Analyse an embedded example against its expectations");
  example_cmd->add_option("name", name, "Example name")->required();
  add_params(example_cmd);
  auto* list_cmd = app.add_subcommand("list-examples", "List embedded examples and scenarios");
  auto* twist_cmd = app.add_subcommand("twist", "Twist a model by a closed invariant 2-form");
  twist_cmd->add_option("model", source, "Model JSON path or example name")->required();
  twist_cmd->add_option("--form", form, "Curvature 2-form, e.g. \"a1^a3 + a2^a4\"")->required();
  twist_cmd->add_option("--vector", vector, "Coframe name of the twisting vector")->required();
  twist_cmd->add_option("--a", a, "Scaling of the twisting connection");
  add_params(twist_cmd);
  auto* conformal_cmd = app.add_subcommand("conformal", "Conformal change by a closed one-form dσ");
  conformal_cmd->add_option("model", source, "Model JSON path or example name")->required();
  conformal_cmd->add_option("--dsigma", dsigma, "Closed one-form, e.g. \"-1/3*a1\"")->required();
  add_params(conformal_cmd);
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the golden corpus and identity suites");
  auto* export_cmd = app.add_subcommand("export", "Print an embedded example as a model file");
  export_cmd->add_option("name", name, "Example name")->required();
  add_params(export_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(source, o);
    if (*example_cmd) return cmd_example(name, o);
    if (*list_cmd) return cmd_list(o);
    if (*twist_cmd) return cmd_twist(source, form, vector, a, o);
    if (*conformal_cmd) return cmd_conformal(source, dsigma, o);
    if (*selftest_cmd) return cmd_selftest(o);
    if (*export_cmd) return cmd_export(name, o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
