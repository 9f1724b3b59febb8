#include "qtorsion/document.hpp"

#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include "qtorsion/formula.hpp"
#include "qtorsion/liealg.hpp"

namespace qtorsion {

namespace {

using nlohmann::json;

const std::set<std::string> kReserved = {"sqrt", "cyc", "I", "J", "K", "wI", "wJ", "wK"};

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

int read_index(const json& v, int dim, const std::string& where) {
  if (!v.is_number_integer()) throw DocumentError("index must be an integer", where);
  const int k = v.get<int>();
  if (k < 1 || k > dim) throw DocumentError("index " + std::to_string(k) + " outside 1.." + std::to_string(dim), where);
  return k - 1;
}

Endomorphism read_matrix(const json& rows, int dim, const std::string& where) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
    throw DocumentError("expected " + std::to_string(dim) + " rows", where);
  Endomorphism m(dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = rows[r];
    const std::string rw = where + "/" + std::to_string(r);
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw DocumentError("expected " + std::to_string(dim) + " entries", rw);
    for (int c = 0; c < dim; ++c) {
      if (!row[c].is_number()) throw DocumentError("matrix entry must be a number", rw + "/" + std::to_string(c));
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

json matrix_json(const Endomorphism& m) {
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

std::string number_text(double v) { return json(v).dump(); }

}  // namespace

ModelDocument read_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    const auto colon = what.rfind(": ");
    throw DocumentError("malformed JSON (" + (colon == std::string::npos ? what : what.substr(colon + 2)) + ")",
                        "byte " + std::to_string(e.byte));
  }
  if (!j.is_object()) throw DocumentError("model must be a JSON object", "/");
  for (const auto& [key, value] : j.items())
    if (key != "dimension" && key != "names" && key != "brackets" && key != "triple" && key != "tolerance")
      throw DocumentError("unknown field '" + key + "'", "/" + key);

  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    throw DocumentError("dimension must be an integer", "/dimension");
  const int dim = j["dimension"].get<int>();
  if (dim < 8 || dim % 4 != 0 || dim > kMaxDim)
    throw DocumentError("dimension must be 4n with n >= 2 and at most " + std::to_string(kMaxDim), "/dimension");

  ModelDocument doc;
  if (j.contains("names")) {
    const json& names = j["names"];
    if (!names.is_array() || static_cast<int>(names.size()) != dim)
      throw DocumentError("expected " + std::to_string(dim) + " names", "/names");
    std::set<std::string> seen;
    for (std::size_t k = 0; k < names.size(); ++k) {
      const std::string where = "/names/" + std::to_string(k);
      if (!names[k].is_string()) throw DocumentError("name must be a string", where);
      const std::string name = names[k].get<std::string>();
      if (!is_identifier(name) || kReserved.count(name)) throw DocumentError("'" + name + "' is not a usable name", where);
      if (!seen.insert(name).second) throw DocumentError("duplicate name '" + name + "'", where);
      doc.names.push_back(name);
    }
  } else {
    doc.names = coframe_names("e", dim);
  }

  std::vector<Bracket> brackets;
  if (j.contains("brackets")) {
    const json& list = j["brackets"];
    if (!list.is_array()) throw DocumentError("brackets must be an array", "/brackets");
    std::set<std::tuple<int, int, int>> seen;
    for (std::size_t b = 0; b < list.size(); ++b) {
      const std::string where = "/brackets/" + std::to_string(b);
      const json& q = list[b];
      if (!q.is_array() || q.size() != 4) throw DocumentError("bracket must be [i, j, k, c]", where);
      const int i = read_index(q[0], dim, where + "/0"), jj = read_index(q[1], dim, where + "/1"),
                k = read_index(q[2], dim, where + "/2");
      if (i >= jj) throw DocumentError("bracket needs i < j", where);
      if (!q[3].is_number()) throw DocumentError("coefficient must be a number", where + "/3");
      if (!seen.insert({i, jj, k}).second) throw DocumentError("repeated bracket component", where);
      brackets.push_back({i, jj, k, q[3].get<double>()});
    }
  }
  LieAlgebra algebra;
  try {
    algebra = LieAlgebra(dim, brackets, doc.names);
  } catch (const std::invalid_argument& e) {
    throw DocumentError(e.what(), "/brackets");
  }

  HypercomplexTriple triple;
  const json tj = j.value("triple", json("standard"));
  if (tj.is_string()) {
    if (tj.get<std::string>() != "standard") throw DocumentError("triple must be \"standard\" or {I, J}", "/triple");
    triple = HypercomplexTriple::standard(dim);
  } else if (tj.is_object()) {
    for (const auto& [key, value] : tj.items())
      if (key != "I" && key != "J") throw DocumentError("unknown field '" + key + "'", "/triple/" + key);
    if (!tj.contains("I") || !tj.contains("J")) throw DocumentError("triple needs I and J", "/triple");
    const Endomorphism i = read_matrix(tj["I"], dim, "/triple/I"), jm = read_matrix(tj["J"], dim, "/triple/J");
    try {
      triple = HypercomplexTriple(i, jm, 1e-10);
    } catch (const std::invalid_argument& e) {
      throw DocumentError(e.what(), "/triple");
    }
  } else {
    throw DocumentError("triple must be \"standard\" or {I, J}", "/triple");
  }

  if (j.contains("tolerance")) {
    if (!j["tolerance"].is_number() || !(j["tolerance"].get<double>() > 0.0))
      throw DocumentError("tolerance must be a positive number", "/tolerance");
    doc.tolerance = j["tolerance"].get<double>();
  }
  doc.model = AqhModel(algebra, triple);
  return doc;
}

json model_json(const ModelDocument& doc) {
  const AqhModel& m = doc.model;
  json j;
  j["dimension"] = m.dim();
  j["names"] = doc.names;
  json brackets = json::array();
  for (const Bracket& b : m.algebra().brackets()) brackets.push_back({b.i + 1, b.j + 1, b.k + 1, b.c});
  j["brackets"] = brackets;
  const HypercomplexTriple standard = HypercomplexTriple::standard(m.dim());
  const bool is_standard =
      (m.triple().i() - standard.i()).max_abs() == 0.0 && (m.triple().j() - standard.j()).max_abs() == 0.0;
  if (is_standard)
    j["triple"] = "standard";
  else
    j["triple"] = {{"I", matrix_json(m.triple().i())}, {"J", matrix_json(m.triple().j())}};
  if (doc.tolerance) j["tolerance"] = *doc.tolerance;
  return j;
}

json checks_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const Check& c : checks)
    out.push_back({{"name", c.name},
                   {"residual", c.residual},
                   {"tolerance", c.tol},
                   {"pass", c.pass},
                   {"informational", c.informational}});
  return out;
}

std::string checks_text(const json& checks) {
  std::ostringstream os;
  for (const json& c : checks) {
    const bool pass = c.at("pass").get<bool>();
    os << "  " << (pass ? "PASS" : (c.at("informational").get<bool>() ? "NOTE" : "FAIL")) << "  "
       << c.at("name").get<std::string>();
    os << "  (residual " << number_text(c.at("residual")) << ", tolerance " << number_text(c.at("tolerance")) << ")";
    os << "\n";
  }
  return os.str();
}

json report_json(const Analysis& an) {
  json j;
  j["model"] = {{"dimension", an.x.dim()}, {"n", an.x.n}, {"names", an.names}};
  j["tolerance"] = an.tol;
  json warnings = json::array();
  if (!an.unimodular) warnings.push_back("the algebra is not unimodular, so d* is not the codifferential of a compact quotient");
  for (const std::string& w : tolerance_warnings(an)) warnings.push_back(w);
  j["warnings"] = warnings;

  const TorsionReport& r = an.report;
  json components = json::array();
  for (int c = 0; c < 6; ++c)
    components.push_back(
        {{"module", kModuleNames[c]}, {"key", kComponentNames[c]}, {"nonzero", r.flags[c]}, {"norm", r.norms[c]}});
  j["aqh"] = {{"label", r.label}, {"components", components}, {"scale", r.scale}};

  json gh = json::array();
  for (int a = 0; a < 3; ++a) {
    const GhReport& g = an.gh[a];
    json flags, norms;
    for (int b = 0; b < 4; ++b) {
      const std::string w = "W" + std::to_string(b + 1);
      flags[w] = g.flags[b];
      norms[w] = g.norms[b];
    }
    gh.push_back({{"structure", kStructureNames[a]},
                  {"label", g.label},
                  {"flags", flags},
                  {"norms", norms},
                  {"tableConsistent", g.table_consistent},
                  {"lee", render_form(g.lee, an.names)},
                  {"nijAlt", render_form(g.nij_alt, an.names)}});
  }
  j["grayHervella"] = gh;

  j["hkt"] = {{"isHkt", an.hkt.is_hkt}, {"defect", an.hkt.defect}};
  json qkt = {{"isQkt", an.qkt.is_qkt}, {"isHkt", an.qkt.is_hkt}};
  if (an.qkt.is_qkt) {
    qkt["T"] = render_form(an.qkt.T, an.names);
    qkt["t"] = render_form(an.qkt.t, an.names);
    json gamma;
    for (int a = 0; a < 3; ++a) gamma[kStructureNames[a]] = render_form(an.qkt.gamma[a], an.names);
    qkt["gamma"] = gamma;
    qkt["checks"] = checks_json(an.qkt.checks);
  } else {
    qkt["violation"] = an.qkt.violation;
  }
  j["qkt"] = qkt;
  j["khType"] = an.kh_type;

  json forms = json::object();
  for (const std::string& key : quantity_keys()) {
    if ((key == "t" || key == "T") && !an.qkt.is_qkt) continue;
    forms[key] = render_form(quantity(an, key), an.names);
  }
  j["forms"] = forms;

  const std::vector<Check> ids = identity_checks(an);
  json failed = json::array();
  for (const Check& c : ids)
    if (!c.pass && !c.informational) failed.push_back({{"name", c.name}, {"residual", c.residual}});
  j["identities"] = {{"checked", ids.size()}, {"failed", failed}};
  return j;
}

std::string report_text(const json& j) {
  std::ostringstream os;
  const json& model = j.at("model");
  os << "dimension " << model.at("dimension").get<int>() << " (n = " << model.at("n").get<int>() << "), tolerance "
     << number_text(j.at("tolerance")) << "\n";
  for (const json& w : j.at("warnings")) os << "warning: " << w.get<std::string>() << "\n";

  const json& aqh = j.at("aqh");
  os << "\nintrinsic torsion: " << aqh.at("label").get<std::string>() << "  (scale " << number_text(aqh.at("scale"))
     << ")\n";
  for (const json& c : aqh.at("components"))
    os << "  " << (c.at("nonzero").get<bool>() ? "nonzero " : "zero    ") << c.at("module").get<std::string>()
       << "  norm " << number_text(c.at("norm")) << "\n";

  os << "\nGray–Hervella:\n";
  for (const json& g : j.at("grayHervella")) {
    os << "  " << g.at("structure").get<std::string>() << ": " << g.at("label").get<std::string>() << "  norms";
    for (const auto& [w, v] : g.at("norms").items()) os << " " << w << "=" << number_text(v);
    if (!g.at("tableConsistent").get<bool>()) os << "  (table condition inconsistent)";
    os << "\n    lee = " << g.at("lee").get<std::string>() << "\n    nijAlt = " << g.at("nijAlt").get<std::string>() << "\n";
  }

  const json& qkt = j.at("qkt");
  os << "\nHKT: " << (j.at("hkt").at("isHkt").get<bool>() ? "yes" : "no") << "  defect "
     << number_text(j.at("hkt").at("defect")) << "\n";
  os << "QKT: ";
  if (qkt.at("isQkt").get<bool>()) {
    os << "yes\n  T = " << qkt.at("T").get<std::string>() << "\n  t = " << qkt.at("t").get<std::string>() << "\n";
    for (const auto& [a, g] : qkt.at("gamma").items()) os << "  gamma_" << a << " = " << g.get<std::string>() << "\n";
    os << checks_text(qkt.at("checks"));
  } else {
    os << "no (" << qkt.at("violation").get<std::string>() << " nonzero)\n";
  }
  os << "KH-type relation: " << (j.at("khType").get<bool>() ? "holds" : "fails") << "\n";

  os << "\nforms:\n";
  for (const auto& [key, value] : j.at("forms").items()) os << "  " << key << " = " << value.get<std::string>() << "\n";

  const json& ids = j.at("identities");
  os << "\nidentities: " << ids.at("checked").get<std::size_t>() << " checked, ";
  if (ids.at("failed").empty()) {
    os << "all hold\n";
  } else {
    os << ids.at("failed").size() << " failed\n";
    for (const json& f : ids.at("failed"))
      os << "  FAIL  " << f.at("name").get<std::string>() << "  (residual " << number_text(f.at("residual")) << ")\n";
  }
  return os.str();
}

}  // namespace qtorsion
