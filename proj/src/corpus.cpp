#include "qtorsion/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "qtorsion/liealg.hpp"
#include "qtorsion/multilinear.hpp"
#include "qtorsion/transforms.hpp"

namespace qtorsion {

namespace {

using nlohmann::json;

// Differentials are given per coframe label; expected forms are written for I.
const char* const kCorpus = R"json({
"examples": [
{
  "name": "s3xt9",
  "description": "S³ × T⁹ with the Sp(1) factor spread over the first vectors of each quadruple",
  "coframe": "abc", "dim": "12", "cycle": "234",
  "differentials": {"a1": "-2*b1^c1", "b1": "-2*c1^a1", "c1": "-2*a1^b1"},
  "expect": {
    "aqh": "Λ³₀E S³H + KH", "gh": "W_{1+3}", "hkt": false, "qkt": false, "kh": true,
    "forms": {
      "domega_I": "2*cyc(a2^b1^c1)",
      "beta_I": "-2*cyc(a1^b3^c3 + a1^b4^c4)",
      "betaK_I": "-2/3*cyc(a1^b1^c1 + a1^b2^c2 + a1^b3^c3 + a1^b4^c4)",
      "beta3_I": "-2/3*cyc(-a1^b1^c1 - a1^b2^c2 + 2*a1^b3^c3 + 2*a1^b4^c4)",
      "N_I": "2*a1^b1^c1 - 2*cyc(a1^b2^c2)"
    },
    "zero": ["lambda_A", "betaE_A", "psi3_A", "psiK_A", "theta", "theta_A", "lee_A"],
    "nonzero": ["psi3", "psiK", "dOmega"]
  }
},
{
  "name": "s3xt4m1",
  "description": "S³ × T^{4m+1} with the Sp(1) factor on a2, a3, a4; HKT",
  "params": {"m": 1}, "sweep": [{"m": 1}, {"m": 2}],
  "coframe": "a", "dim": "4*m+4", "cycle": "234",
  "differentials": {"a2": "-2*a3^a4", "a3": "-2*a4^a2", "a4": "-2*a2^a3"},
  "expect": {
    "aqh": "KH + EH", "gh": "W_{3+4}", "hkt": true, "qkt": true,
    "forms": {
      "domega_I": "-2*a1^a3^a4",
      "beta_I": "-4*a2^a3^a4",
      "lee_I": "-2*a1",
      "Alambda_I": "-1/n*a1",
      "nu3_I": "-8/(2*n+1)*a1",
      "nu4_I": "-4*a1",
      "theta": "-1/(4*(2*n+1))*a1",
      "theta_I": "-1/(4*(2*n+1))*a1",
      "t": "-2*a1",
      "T": "I(-2*a1^a3^a4)"
    }
  }
},
{
  "name": "qheis",
  "description": "compact quotient of the quaternionic Heisenberg group",
  "coframe": "abc", "dim": "12", "cycle": "234",
  "differentials": {
    "c1": "-(a1^b1 - a2^b2 - a3^b3 - a4^b4)",
    "c2": "-(a1^b2 + a2^b1 + a3^b4 - a4^b3)",
    "c3": "-(a1^b3 + a3^b1 + a4^b2 - a2^b4)",
    "c4": "-(a1^b4 + a4^b1 + a2^b3 - a3^b2)"
  },
  "expect": {
    "aqh": "Λ³₀EH + KH", "gh": "W_3", "hkt": false, "qkt": false,
    "forms": {
      "beta_I": "2*(a1^b1^c1 + a1^b2^c2 + a1^b3^c3 + a1^b4^c4 - a2^b1^c2 + a2^b2^c1 - a2^b3^c4 + a2^b4^c3)"
    },
    "zero": ["nu3_A", "nu4_A", "lee_A", "beta3_sum"],
    "nonzero": ["betaK_I", "beta3_I", "beta3_J", "beta3_K"],
    "equal": [["betaK_I", "betaK_J"], ["betaK_I", "betaK_K"]]
  }
},
{
  "name": "t3h3-a",
  "description": "T³ × (Γ\\H)³, first structure",
  "coframe": "abc", "dim": "12", "cycle": "abc;234",
  "differentials": {"a2": "-a3^a4", "b3": "-b4^b2", "c4": "-c2^c3"},
  "expect": {
    "aqh": "K S³H + E S³H + KH + EH", "gh": "W_{2+3+4}", "kh": false,
    "forms": {
      "domega_I": "-a1^a3^a4",
      "beta_I": "-b2^b3^b4 - c2^c3^c4",
      "nu3_I": "-2/7*(b1 + c1)",
      "nu4_I": "-b1 - c1",
      "Alambda_I": "1/6*(a1 - b1 - c1)",
      "theta_I": "1/56*(-3*a1 + b1 + c1)",
      "theta": "-1/168*(a1 + b1 + c1)",
      "lee_I": "-a1",
      "betaE_I": "1/7*(I(b1 + c1)^wI + J(b1 + c1)^wJ + K(b1 + c1)^wK)",
      "beta3_I": "0",
      "betaK_I": "-b2^b3^b4 - c2^c3^c4 - 1/7*(I(b1 + c1)^wI + J(b1 + c1)^wJ + K(b1 + c1)^wK)"
    }
  }
},
{
  "name": "t3h3-b",
  "description": "T³ × (Γ\\H)³, second structure",
  "coframe": "abc", "dim": "12", "cycle": "abc;234",
  "differentials": {"a2": "-b2^c2", "b3": "-c3^a3", "c4": "-a4^b4"},
  "expect": {
    "aqh": "Λ³₀E S³H + K S³H + Λ³₀EH + KH", "gh": "W_{1+2+3}",
    "forms": {
      "domega_I": "-a1^b2^c2 + a3^b4^c3 - a4^b4^c3",
      "beta_I": "-a1^b1^c4 - a1^b3^c1 - a2^b2^c4 - a2^b3^c2 - a2^b3^c3 - a2^b4^c4"
    },
    "zero": ["lambda_A", "lee_A", "nu3_A", "nu4_A", "betaE_A"],
    "nonzero": ["betaK_sum", "beta3_sum"]
  }
},
{
  "name": "t3mk3-a",
  "description": "T³ × M(k)³, first structure",
  "params": {"k": 1}, "sweep": [{"k": 1}, {"k": 0.5}, {"k": 2}],
  "coframe": "abc", "dim": "12", "cycle": "abc;234",
  "differentials": {
    "a3": "-k*a3^a2", "a4": "k*a4^a2", "b4": "-k*b4^b3", "b2": "k*b2^b3", "c2": "-k*c2^c4", "c3": "k*c3^c4"
  },
  "expect": {
    "aqh": "K S³H + E S³H", "gh": "W_{2+3+4}",
    "forms": {
      "domega_I": "k*b1^b2^b3 - k*c1^c2^c4",
      "beta_I": "-k*b1^b2^b4 - k*c1^c2^c3",
      "lee_I": "k*(b3 - c4)",
      "Alambda_I": "k/3*(-b3 + c4)",
      "nu4_I": "k*(-b3 + c4)",
      "nu3_I": "2*k/7*(-b3 + c4)",
      "theta": "0",
      "theta_I": "-k/14*(-b3 + c4)",
      "betaE_I": "k/7*(I(b3 - c4)^wI + J(b3 - c4)^wJ + K(b3 - c4)^wK)",
      "beta3_I": "0"
    },
    "zero": ["beta_sum"]
  }
},
{
  "name": "t3mk3-b",
  "description": "T³ × M(k)³, second structure",
  "params": {"k": 1}, "sweep": [{"k": 1}, {"k": 0.5}, {"k": 2}],
  "coframe": "abc", "dim": "12", "cycle": "abc;234",
  "differentials": {
    "b2": "-k*b2^a2", "c2": "k*c2^a2", "c3": "-k*c3^b3", "a3": "k*a3^b3", "a4": "-k*a4^c4", "b4": "k*b4^c4"
  },
  "expect": {
    "aqh": "K S³H + Λ³₀EH + KH", "gh": "W_{2+3}",
    "forms": {
      "domega_I": "k*(a3^a4^b3 - a3^a4^c4 - b1^b2^a2 + b3^b4^c4 + c1^c2^a2 - c3^c4^b3)",
      "beta_I": "k*(-a1^a3^b1 + a1^a4^c1 - a2^a3^b2 + a2^a4^c2 - b1^b4^c1 - b2^b3^a3 - b2^b4^a4 - b2^b4^c2 + c1^c3^b1 + c2^c3^a3 + c2^c3^b2 + c2^c4^a4)"
    },
    "zero": ["lambda_A", "nu3_A", "nu4_A", "theta", "theta_A", "lee_A", "beta3_sum"],
    "nonzero": ["beta3_I", "betaK_sum"]
  }
},
{
  "name": "torus",
  "description": "flat torus T^{4n}",
  "params": {"n": 3}, "sweep": [{"n": 2}, {"n": 3}],
  "coframe": "a", "dim": "4*n", "cycle": "234",
  "differentials": {},
  "expect": {"aqh": "ξ = 0", "gh": "Kähler", "hkt": true, "qkt": true, "kh": true, "zero": ["*"]}
},
{
  "name": "salamon",
  "description": "Salamon's nilmanifold with dΩ = 0",
  "coframe": "ab", "dim": "8", "cycle": "234",
  "differentials": {
    "a2": "-sqrt(3)*a1^a4 - 3*a4^b1",
    "b2": "a1^a4 + sqrt(3)*a4^b1",
    "b4": "a1^a2 + sqrt(3)*a2^b1 + sqrt(3)*a1^b2 - 3*b1^b2"
  },
  "expect": {"aqh": "K S³H", "zero": ["dOmega"]}
}
],
"scenarios": [
{
  "name": "s3xt9-conformal",
  "description": "conformal change of S³ × T⁹",
  "model": "s3xt9", "conformal": "a2",
  "expect": {"aqh": "Λ³₀E S³H + KH + EH", "gh": "W_{1+3+4}"}
},
{
  "name": "s3xt4m1-conformal-kh",
  "description": "conformal change of S³ × T^{4m+1} by dσ = 4θ",
  "model": "s3xt4m1", "sweep": [{"m": 1}, {"m": 2}], "conformal": "-1/(2*n+1)*a1",
  "expect": {
    "aqh": "KH", "gh": "W_{3+4}", "hkt": false, "qkt": true,
    "forms": {
      "lee_I": "-4/(2*n+1)*a1",
      "Alambda_I": "-2/(2*n+1)*a1",
      "nu3_I": "-4/(2*n+1)*a1",
      "nu4_I": "-8*n/(2*n+1)*a1",
      "theta": "0",
      "theta_I": "0"
    }
  }
},
{
  "name": "s3xt4m1-conformal-w3",
  "description": "conformal change of S³ × T^{4m+1} to balanced structures",
  "model": "s3xt4m1", "sweep": [{"m": 1}, {"m": 2}], "conformal": "-1/(2*n-1)*a1",
  "expect": {
    "aqh": "KH + EH", "gh": "W_3", "hkt": false,
    "forms": {
      "lee_I": "0",
      "Alambda_I": "-2*(n-1)/(n*(2*n-1))*a1",
      "nu3_I": "-4*(2*n-3)/(4*n*n-1)*a1",
      "nu4_I": "-8*(n-1)/(2*n-1)*a1",
      "theta": "1/(2*(4*n*n-1))*a1",
      "theta_I": "1/(2*(4*n*n-1))*a1"
    }
  }
},
{
  "name": "t3h3-a-conformal",
  "description": "conformal change of the first T³ × (Γ\\H)³ structure by dσ = 4θ",
  "model": "t3h3-a", "conformal": "-1/42*(a1 + b1 + c1)",
  "expect": {"aqh": "K S³H + E S³H + KH", "gh": "W_{2+3+4}", "zero": ["theta"]}
},
{
  "name": "t3h3-b-conformal",
  "description": "conformal change of the second T³ × (Γ\\H)³ structure",
  "model": "t3h3-b", "conformal": "a1",
  "expect": {"gh": "W_{1+2+3+4}"}
},
{
  "name": "salamon-conformal",
  "description": "conformal change of Salamon's example",
  "model": "salamon", "conformal": "a1",
  "expect": {"aqh": "K S³H + EH"}
},
{
  "name": "salamon-twist",
  "description": "twist of Salamon's example by F = a1a3 + a2a4 along b3",
  "model": "salamon", "twist": {"F": "a1^a3 + a2^a4", "X": "b3", "a": 1},
  "expect": {"aqh": "K S³H + KH"}
},
{
  "name": "salamon-twist-conformal",
  "description": "conformal change of the twisted Salamon example",
  "model": "salamon", "twist": {"F": "a1^a3 + a2^a4", "X": "b3", "a": 1}, "conformal": "a1",
  "expect": {"aqh": "K S³H + KH + EH"}
},
{
  "name": "torus-kappa-twist",
  "description": "twist of T¹² by F = I_(1)κ_I along a9",
  "model": "torus", "params": {"n": 3},
  "twist": {"F": "a2^a1 + a4^a3 - a6^a5 - a8^a7", "X": "a9", "a": 1},
  "expect": {"aqh": "Λ³₀E S³H + K S³H + Λ³₀EH + KH", "mu": [0, 0, 0], "alpha": "0"}
},
{
  "name": "torus-kappa-twist-conformal",
  "description": "conformal change of the twisted T¹²",
  "model": "torus", "params": {"n": 3},
  "twist": {"F": "a2^a1 + a4^a3 - a6^a5 - a8^a7", "X": "a9", "a": 1}, "conformal": "a1",
  "expect": {"aqh": "Λ³₀E S³H + K S³H + Λ³₀EH + KH + EH"}
},
{
  "name": "torus-s2e-twist",
  "description": "twist of T⁸ by a curvature in S²E",
  "model": "torus", "params": {"n": 2},
  "twist": {"F": "a1^a3 + a2^a4", "X": "a5", "a": 2},
  "expect": {"mu": [0, 0, 0], "kappa": 0}
},
{
  "name": "identity-twist",
  "description": "twist of S³ × T⁹ with F = 0",
  "model": "s3xt9",
  "twist": {"F": "0", "X": "a2", "a": 1},
  "expect": {"aqh": "Λ³₀E S³H + KH", "gh": "W_{1+3}"}
}
]
})json";

const json& corpus() {
  static const json doc = json::parse(kCorpus);
  return doc;
}

const json& find_entry(const std::string& list, const std::string& name) {
  for (const json& e : corpus().at(list))
    if (e.at("name") == name) return e;
  throw std::invalid_argument("unknown " + std::string(list == "examples" ? "example" : "scenario") + " '" +
                              name + "'");
}

Variables to_variables(const json& j) {
  Variables v;
  if (j.is_object())
    for (auto it = j.begin(); it != j.end(); ++it) v[it.key()] = it.value().get<double>();
  return v;
}

// Defaults overridden by `params`; unknown parameter names are rejected.
Variables resolve_params(const json& entry, const Variables& params) {
  Variables v = to_variables(entry.value("params", json::object()));
  for (const auto& [k, val] : params) {
    if (!v.count(k)) throw std::invalid_argument("example '" + entry.at("name").get<std::string>() +
                                                 "' has no parameter '" + k + "'");
    v[k] = val;
  }
  return v;
}

struct Rotation {
  std::string letters;
  bool positions = false;
};

Rotation parse_cycle(const std::string& cycle) {
  Rotation r;
  std::size_t start = 0;
  while (start <= cycle.size()) {
    const std::size_t end = std::min(cycle.find(';', start), cycle.size());
    const std::string part = cycle.substr(start, end - start);
    if (part == "234")
      r.positions = true;
    else if (!part.empty())
      r.letters = part;
    start = end + 1;
  }
  return r;
}

std::string rotate_identifier(const std::string& id, const Rotation& r) {
  static const std::map<std::string, std::string> fixed = {{"I", "J"}, {"J", "K"}, {"K", "I"},
                                                           {"wI", "wJ"}, {"wJ", "wK"}, {"wK", "wI"}};
  if (auto it = fixed.find(id); it != fixed.end()) return it->second;
  std::size_t split = 0;
  while (split < id.size() && std::isalpha(static_cast<unsigned char>(id[split]))) ++split;
  if (split != 1 || split == id.size()) return id;
  for (std::size_t i = split; i < id.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return id;
  char letter = id[0];
  int k = std::stoi(id.substr(split));
  if (const auto p = r.letters.find(letter); p != std::string::npos)
    letter = r.letters[(p + 1) % r.letters.size()];
  if (r.positions) {
    const int pos = (k - 1) % 4;
    if (pos > 0) k += (pos % 3 + 1) - pos;
  }
  return std::string(1, letter) + std::to_string(k);
}

std::string map_identifiers(const std::string& expr, const std::function<std::string(const std::string&)>& f) {
  std::string out;
  std::size_t i = 0;
  while (i < expr.size()) {
    const unsigned char c = static_cast<unsigned char>(expr[i]);
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < expr.size() && (std::isalnum(static_cast<unsigned char>(expr[j])) || expr[j] == '_')) ++j;
      out += f(expr.substr(i, j - i));
      i = j;
    } else if (std::isdigit(c) || c == '.') {
      std::size_t j = i;
      while (j < expr.size() && (std::isalnum(static_cast<unsigned char>(expr[j])) || expr[j] == '.')) ++j;
      out += expr.substr(i, j - i);
      i = j;
    } else {
      out += expr[i++];
    }
  }
  return out;
}

struct Built {
  AqhModel model;
  Variables vars;
  const json* entry = nullptr;
};

Built build(const std::string& name, const Variables& params) {
  const json& e = find_entry("examples", name);
  Built b;
  b.entry = &e;
  b.vars = resolve_params(e, params);
  const double dimv = parse_scalar(e.at("dim").get<std::string>(), b.vars);
  const int dim = static_cast<int>(std::lround(dimv));
  if (std::abs(dimv - dim) > 1e-12 || dim <= 0 || dim % 4 != 0 || dim > kMaxDim)
    throw std::invalid_argument("example '" + name + "' has invalid dimension for these parameters");
  b.vars["n"] = dim / 4;
  const std::vector<std::string> names = coframe_names(e.at("coframe").get<std::string>(), dim);
  std::vector<Form> de(dim, Form(dim, 2));
  for (auto it = e.at("differentials").begin(); it != e.at("differentials").end(); ++it) {
    const auto pos = std::find(names.begin(), names.end(), it.key());
    if (pos == names.end()) throw std::invalid_argument("unknown coframe label '" + it.key() + "'");
    de[pos - names.begin()] = parse_form(it.value().get<std::string>(), names, 2, b.vars);
  }
  b.model = AqhModel(LieAlgebra::from_differentials(de, names), HypercomplexTriple::standard(dim));
  return b;
}

double tolerance_for(const Form& expected, double tol) { return tol * (1.0 + expected.max_abs()); }

Form sum_over(const Analysis& an, const std::string& base) {
  Form s = quantity(an, base + "_I");
  s += quantity(an, base + "_J");
  s += quantity(an, base + "_K");
  return s;
}

// Quantity by key, including N_A (when skew) and sums written base_sum.
Form lookup(const Analysis& an, const std::string& key) {
  if (key.size() > 4 && key.compare(key.size() - 4, 4, "_sum") == 0) return sum_over(an, key.substr(0, key.size() - 4));
  if (key.size() == 3 && key[0] == 'N' && key[1] == '_') {
    for (int a = 0; a < 3; ++a)
      if (key.substr(2) == kStructureNames[a]) return to_form(an.gh[a].nijenhuis);
  }
  return quantity(an, key);
}

std::vector<std::string> expand_keys(const std::string& key) {
  if (key == "*") return quantity_keys();
  if (key.size() > 2 && key.compare(key.size() - 2, 2, "_A") == 0) {
    const std::string base = key.substr(0, key.size() - 2);
    return {base + "_I", base + "_J", base + "_K"};
  }
  return {key};
}

void label_checks(const std::string& prefix, const json& ex, const Analysis& an, std::vector<Check>& out) {
  if (ex.contains("aqh"))
    out.push_back(make_flag_check(prefix + "AQH label " + ex.at("aqh").get<std::string>() + " (got " +
                                      an.report.label + ")",
                                  an.report.label == ex.at("aqh").get<std::string>()));
  if (ex.contains("gh")) {
    const std::string want = ex.at("gh").get<std::string>();
    for (int a = 0; a < 3; ++a) {
      out.push_back(make_flag_check(prefix + "GH label of " + kStructureNames[a] + " " + want + " (got " +
                                        an.gh[a].label + ")",
                                    an.gh[a].label == want));
      out.push_back(make_flag_check(prefix + "GH table conditions of " + kStructureNames[a],
                                    an.gh[a].table_consistent));
    }
  }
  if (ex.contains("hkt")) out.push_back(make_flag_check(prefix + "HKT", an.hkt.is_hkt == ex.at("hkt").get<bool>()));
  if (ex.contains("qkt")) out.push_back(make_flag_check(prefix + "QKT", an.qkt.is_qkt == ex.at("qkt").get<bool>()));
  if (ex.contains("kh")) out.push_back(make_flag_check(prefix + "type KH relation", an.kh_type == ex.at("kh").get<bool>()));
}

void form_checks(const std::string& prefix, const json& ex, const Analysis& an, const Variables& vars,
                 const std::string& cycle, std::vector<Check>& out) {
  const Rotation rot = parse_cycle(cycle);
  const auto rotate = [&](const std::string& s) {
    return map_identifiers(s, [&](const std::string& id) { return rotate_identifier(id, rot); });
  };
  const json forms = ex.value("forms", json::object());
  std::map<std::string, std::string> expected;
  for (auto it = forms.begin(); it != forms.end(); ++it) {
    const std::string key = it.key();
    std::string text = expand_cyc(it.value().get<std::string>());
    expected[key] = text;
    const auto us = key.rfind('_');
    if (us != std::string::npos && key.substr(us + 1) == "I") {
      const std::string base = key.substr(0, us);
      std::string t = text;
      for (const char* a : {"J", "K"}) {
        t = rotate(t);
        expected.try_emplace(base + "_" + a, t);
      }
    }
  }
  for (const auto& [key, text] : expected) {
    const Form got = lookup(an, key);
    const Form want = parse_form(text, an.names, got.degree(), vars, &an.x.triple);
    out.push_back(make_check(prefix + key + " = " + text, (got - want).max_abs(), tolerance_for(want, an.tol)));
  }
  for (const json& z : ex.value("zero", json::array()))
    for (const std::string& key : expand_keys(z.get<std::string>())) {
      const Form f = lookup(an, key);
      out.push_back(make_check(prefix + key + " = 0", f.max_abs(), an.tol * (1.0 + an.report.scale)));
    }
  for (const json& z : ex.value("nonzero", json::array()))
    for (const std::string& key : expand_keys(z.get<std::string>()))
      out.push_back(make_flag_check(prefix + key + " ≠ 0", lookup(an, key).max_abs() > an.tol * (1.0 + an.report.scale)));
  for (const json& pair : ex.value("equal", json::array())) {
    const std::string k1 = pair.at(0), k2 = pair.at(1);
    out.push_back(make_check(prefix + k1 + " = " + k2, (lookup(an, k1) - lookup(an, k2)).max_abs(),
                             an.tol * (1.0 + an.report.scale)));
  }
}

std::vector<Variables> sweep_of(const json& e) {
  std::vector<Variables> out;
  for (const json& p : e.value("sweep", json::array())) out.push_back(to_variables(p));
  if (out.empty()) out.push_back(to_variables(e.value("params", json::object())));
  return out;
}

}  // namespace

std::string expand_cyc(const std::string& expr) {
  std::string out;
  std::size_t i = 0;
  while (i < expr.size()) {
    const std::size_t at = expr.find("cyc(", i);
    const bool word_start = at != std::string::npos &&
                            (at == 0 || !(std::isalnum(static_cast<unsigned char>(expr[at - 1])) || expr[at - 1] == '_'));
    if (at == std::string::npos) {
      out += expr.substr(i);
      break;
    }
    if (!word_start) {
      out += expr.substr(i, at + 4 - i);
      i = at + 4;
      continue;
    }
    int depth = 1;
    std::size_t j = at + 4;
    while (j < expr.size() && depth > 0) {
      if (expr[j] == '(') ++depth;
      if (expr[j] == ')') --depth;
      ++j;
    }
    if (depth != 0) throw ParseError("unbalanced cyc(", at);
    const std::string inner = expand_cyc(expr.substr(at + 4, j - at - 5));
    const std::string once = rotate_expression(inner, "abc");
    const std::string twice = rotate_expression(once, "abc");
    out += expr.substr(i, at - i) + "((" + inner + ") + (" + once + ") + (" + twice + "))";
    i = j;
  }
  return out;
}

std::string rotate_expression(const std::string& expr, const std::string& cycle) {
  const Rotation rot = parse_cycle(cycle);
  return map_identifiers(expr, [&](const std::string& id) {
    if (cycle == "abc" && (id == "I" || id == "J" || id == "K" || id == "wI" || id == "wJ" || id == "wK")) return id;
    return rotate_identifier(id, rot);
  });
}

std::vector<std::string> example_names() {
  std::vector<std::string> out;
  for (const json& e : corpus().at("examples")) out.push_back(e.at("name"));
  return out;
}

std::string example_description(const std::string& name) { return find_entry("examples", name).at("description"); }

Variables example_defaults(const std::string& name) {
  return to_variables(find_entry("examples", name).value("params", json::object()));
}

std::vector<Variables> example_sweep(const std::string& name) { return sweep_of(find_entry("examples", name)); }

AqhModel build_example(const std::string& name, const Variables& params) { return build(name, params).model; }

std::vector<Check> example_checks(const std::string& name, const Variables& params, const Analysis& an) {
  const Built b = build(name, params);
  const json& e = *b.entry;
  const json& ex = e.at("expect");
  std::vector<Check> out;
  label_checks("", ex, an, out);
  form_checks("", ex, an, b.vars, e.value("cycle", ""), out);
  return out;
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const json& e : corpus().at("scenarios")) out.push_back(e.at("name"));
  return out;
}

std::string scenario_description(const std::string& name) { return find_entry("scenarios", name).at("description"); }

std::vector<ScenarioResult> run_scenario(const std::string& name, double tol) {
  const json& s = find_entry("scenarios", name);
  const std::string model_name = s.at("model");
  const json& model_entry = find_entry("examples", model_name);
  std::vector<Variables> sweep;
  if (s.contains("sweep"))
    sweep = sweep_of(s);
  else
    sweep.push_back(to_variables(s.value("params", json::object())));
  std::vector<ScenarioResult> results;
  for (const Variables& params : sweep) {
    const Built b = build(model_name, params);
    ScenarioResult res;
    res.name = name;
    for (const auto& [k, v] : params) {
      std::ostringstream os;
      os << v;
      res.name += " " + k + "=" + os.str();
    }
    res.before = analyze(b.model, tol);
    const std::vector<std::string>& names = res.before.names;
    AqhModel current = b.model;
    Analysis after = res.before;
    if (s.contains("twist")) {
      const json& tw = s.at("twist");
      const Form F = parse_form(tw.at("F").get<std::string>(), names, 2, b.vars);
      const Form X = parse_form(tw.at("X").get<std::string>(), names, 1, b.vars);
      const double a = tw.value("a", 1.0);
      TwistRun run = run_twist(current, res.before, F, X.to_vector(), a);
      const TwistData data = run.data;
      res.checks = run.checks;
      current = run.model;
      after = std::move(run.after);
      const json& ex = s.at("expect");
      if (ex.contains("mu"))
        for (int a2 = 0; a2 < 3; ++a2)
          res.checks.push_back(make_check(std::string("μ_") + kStructureNames[a2],
                                          std::abs(data.mu[a2] - ex.at("mu").at(a2).get<double>()), tol));
      if (ex.contains("alpha"))
        res.checks.push_back(make_check("S²E part of F",
                                        (data.alpha - parse_form(ex.at("alpha").get<std::string>(), names, 2, b.vars)).max_abs(),
                                        tol * (1.0 + F.max_abs())));
      if (ex.contains("kappa")) {
        double k = 0.0;
        for (const Tensor& t : data.kappa) k = std::max(k, t.max_abs());
        res.checks.push_back(make_check("κ = 0", k, tol * (1.0 + F.max_abs())));
      }
    }
    if (s.contains("conformal")) {
      const Form ds = parse_form(s.at("conformal").get<std::string>(), names, 1, b.vars);
      ConformalRun run = run_conformal(current.algebra(), after, ds);
      res.checks.insert(res.checks.end(), run.checks.begin(), run.checks.end());
      after = std::move(run.after);
    }
    res.after = after;
    const json& ex = s.at("expect");
    label_checks("", ex, after, res.checks);
    Variables vars = b.vars;
    form_checks("", ex, after, vars, model_entry.value("cycle", ""), res.checks);
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace qtorsion
