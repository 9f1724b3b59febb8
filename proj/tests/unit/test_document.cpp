#include <gtest/gtest.h>

#include "support.hpp"
#include "qtorsion/document.hpp"

using namespace qtorsion;
using nlohmann::json;

namespace {

ModelDocument document_of(const AqhModel& m) { return {m, m.algebra().names(), std::nullopt}; }

std::string error_location(const std::string& text) {
  try {
    read_model(text);
  } catch (const DocumentError& e) {
    return e.location();
  }
  return "accepted";
}

// Every number and rendered form of the report, in the order they appear.
void leaves(const json& j, std::vector<std::string>& out) {
  if (j.is_object() || j.is_array()) {
    for (const auto& item : j.items()) leaves(item.value(), out);
  } else if (j.is_number_float()) {
    out.push_back(j.dump());
  } else if (j.is_string() && j.get<std::string>().find_first_of("^*") != std::string::npos) {
    out.push_back(j.get<std::string>());
  }
}

}  // namespace

TEST(Document, ReadsMinimalModel) {
  const ModelDocument doc = read_model(R"({"dimension": 8, "brackets": [[1, 2, 3, 1.5]]})");
  EXPECT_EQ(doc.model.dim(), 8);
  EXPECT_EQ(doc.names.front(), "e1");
  EXPECT_DOUBLE_EQ(doc.model.algebra().c(0, 1, 2), 1.5);
  EXPECT_DOUBLE_EQ(doc.model.algebra().c(1, 0, 2), -1.5);
  EXPECT_FALSE(doc.tolerance.has_value());
  EXPECT_LT((doc.model.triple().k() - HypercomplexTriple::standard(8).k()).max_abs(), 1e-15);
}

TEST(Document, RoundTripIsIdempotent) {
  std::mt19937 rng(61);
  for (const auto& in : support::all_instances()) {
    const AqhModel m = build_example(in.name, in.params);
    for (const AqhModel& model : {m, support::perturbed(m, rng)}) {
      const json first = model_json(document_of(model));
      const ModelDocument reread = read_model(first.dump());
      EXPECT_EQ(model_json(reread), first) << support::describe(in);
      EXPECT_EQ(analyze(reread.model).report.label, analyze(model).report.label) << support::describe(in);
    }
  }
  const ModelDocument with_tol = read_model(R"({"dimension": 8, "tolerance": 1e-7})");
  EXPECT_EQ(read_model(model_json(with_tol).dump()).tolerance, 1e-7);
}

TEST(Document, StandardTripleEmittedByName) {
  EXPECT_EQ(model_json(document_of(build_example("s3xt9")))["triple"], "standard");
  std::mt19937 rng(62);
  EXPECT_TRUE(model_json(document_of(support::perturbed(build_example("qheis"), rng)))["triple"].is_object());
}

TEST(Document, ErrorsCarryTheirLocation) {
  EXPECT_EQ(error_location(R"({"dimension": 8,)"), "byte 17");
  EXPECT_EQ(error_location("[]"), "/");
  EXPECT_EQ(error_location(R"({"dimension": 8, "extra": 1})"), "/extra");
  EXPECT_EQ(error_location(R"({"dimension": 6})"), "/dimension");
  EXPECT_EQ(error_location(R"({"dimension": 4})"), "/dimension");
  EXPECT_EQ(error_location(R"({"dimension": 8.5})"), "/dimension");
  EXPECT_EQ(error_location(R"({"names": []})"), "/dimension");
  EXPECT_EQ(error_location(R"({"dimension": 8, "names": ["a"]})"), "/names");
  EXPECT_EQ(error_location(R"({"dimension": 8, "names": ["a","b","c","d","e","f","g","a"]})"), "/names/7");
  EXPECT_EQ(error_location(R"({"dimension": 8, "names": ["a","b","c","d","e","f","g","wI"]})"), "/names/7");
  EXPECT_EQ(error_location(R"({"dimension": 8, "names": ["a","b","c","d","e","f","g","1x"]})"), "/names/7");
  EXPECT_EQ(error_location(R"({"dimension": 8, "brackets": [[2, 1, 3, 1]]})"), "/brackets/0");
  EXPECT_EQ(error_location(R"({"dimension": 8, "brackets": [[1, 2, 9, 1]]})"), "/brackets/0/2");
  EXPECT_EQ(error_location(R"({"dimension": 8, "brackets": [[1, 2, 3]]})"), "/brackets/0");
  EXPECT_EQ(error_location(R"({"dimension": 8, "brackets": [[1, 2, 3, "x"]]})"), "/brackets/0/3");
  EXPECT_EQ(error_location(R"({"dimension": 8, "brackets": [[1, 2, 3, 1], [1, 2, 3, 2]]})"), "/brackets/1");
  EXPECT_EQ(error_location(R"({"dimension": 8, "triple": "other"})"), "/triple");
  EXPECT_EQ(error_location(R"({"dimension": 8, "triple": {"I": []}})"), "/triple");
  EXPECT_EQ(error_location(R"({"dimension": 8, "triple": {"I": [], "J": []}})"), "/triple/I");
  EXPECT_EQ(error_location(R"({"dimension": 8, "tolerance": 0})"), "/tolerance");
}

TEST(Document, JacobiAndTripleValidatedOnLoad) {
  json j = model_json(document_of(build_example("salamon")));
  j["brackets"][0][3] = 2.0 * j["brackets"][0][3].get<double>();
  EXPECT_EQ(error_location(j.dump()), "/brackets");

  json t = model_json(document_of(build_example("torus", {{"n", 2}})));
  const HypercomplexTriple s = HypercomplexTriple::standard(8);
  json rows = json::array();
  for (int r = 0; r < 8; ++r) {
    json row = json::array();
    for (int c = 0; c < 8; ++c) row.push_back(s.i()(r, c));
    rows.push_back(row);
  }
  t["triple"] = {{"I", rows}, {"J", rows}};
  EXPECT_EQ(error_location(t.dump()), "/triple");
}

TEST(Report, NonUnimodularWarningSurfaces) {
  const ModelDocument doc = read_model(R"({"dimension": 8, "brackets": [[1, 2, 2, 1]]})");
  const json r = report_json(analyze(doc.model));
  ASSERT_FALSE(r["warnings"].empty());
  EXPECT_NE(r["warnings"][0].get<std::string>().find("unimodular"), std::string::npos);
  EXPECT_NE(report_text(r).find("not unimodular"), std::string::npos);
}

TEST(Report, CarriesLabelsAndQktBlock) {
  const json s = report_json(analyze(build_example("s3xt9")));
  EXPECT_EQ(s["aqh"]["label"], "Λ³₀E S³H + KH");
  EXPECT_EQ(s["grayHervella"][1]["label"], "W_{1+3}");
  EXPECT_EQ(s["qkt"]["isQkt"], false);
  EXPECT_EQ(s["qkt"]["violation"], "xi33");
  EXPECT_EQ(s["tolerance"], 1e-9);
  const json h = report_json(analyze(build_example("s3xt4m1")));
  EXPECT_EQ(h["qkt"]["isQkt"], true);
  EXPECT_EQ(h["qkt"]["t"], "-2*a1");
  EXPECT_TRUE(h["identities"]["failed"].empty());
}

TEST(Report, TextAndJsonCarryIdenticalNumbers) {
  for (const auto& in : support::all_instances()) {
    const json r = report_json(analyze(build_example(in.name, in.params)));
    const std::string text = report_text(r);
    std::vector<std::string> values;
    leaves(r, values);
    for (const std::string& v : values) EXPECT_NE(text.find(v), std::string::npos) << support::describe(in) << ": " << v;
  }
}

TEST(Report, ChecksRenderTheirOutcome) {
  const json c = checks_json({make_check("small", 1e-12, 1e-9), make_check("large", 0.5, 1e-9),
                              make_check("note", 0.5, 1e-9, true)});
  const std::string text = checks_text(c);
  EXPECT_NE(text.find("PASS  small"), std::string::npos);
  EXPECT_NE(text.find("FAIL  large  (residual 0.5, tolerance 1e-09)"), std::string::npos);
  EXPECT_NE(text.find("NOTE  note"), std::string::npos);
}
