#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtorsion/analysis.hpp"
#include "qtorsion/structure.hpp"

namespace qtorsion {

// Invalid model input; `location` is a JSON pointer or a byte offset.
class DocumentError : public std::invalid_argument {
 public:
  DocumentError(const std::string& what, std::string location)
      : std::invalid_argument(location.empty() ? what : location + ": " + what), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

// Model file:
//   {"dimension": 12, "names": ["a1", ...], "brackets": [[i, j, k, c], ...],
//    "triple": "standard" | {"I": rows, "J": rows}, "tolerance": 1e-9}
// with [e_i, e_j] = Σ c e_k, indices 1-based and i < j. Names and tolerance are optional.
struct ModelDocument {
  AqhModel model;
  std::vector<std::string> names;
  std::optional<double> tolerance;
};

ModelDocument read_model(const std::string& text);
nlohmann::json model_json(const ModelDocument& doc);

// Structured report of an analysis; report_text renders the same values for reading.
nlohmann::json report_json(const Analysis& an);
std::string report_text(const nlohmann::json& report);

nlohmann::json checks_json(const std::vector<Check>& checks);
std::string checks_text(const nlohmann::json& checks);

}  // namespace qtorsion
