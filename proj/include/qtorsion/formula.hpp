#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qtorsion/form.hpp"
#include "qtorsion/structure.hpp"

namespace qtorsion {

// Named scalars usable inside coefficients, e.g. {"n", 3}, {"k", 0.5}.
using Variables = std::map<std::string, double>;

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t column)
      : std::invalid_argument(what + " at column " + std::to_string(column + 1)), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

// Parses expressions such as "-2*a1^a3 + (2*k/7)*(b3 - c4)" over the coframe `names`.
// '^' and '*' between forms are wedge products; sqrt(...) is available for coefficients.
// A literal zero is accepted for any degree. With a triple, I(...), J(...), K(...) apply the
// structures and wI, wJ, wK are the Kähler forms. Throws ParseError.
Form parse_form(std::string_view text, const std::vector<std::string>& names, int degree,
                const Variables& vars = {}, const HypercomplexTriple* triple = nullptr);
double parse_scalar(std::string_view text, const Variables& vars = {});

// "2*a1^a3 - 0.5*b2", terms in increasing index order; "0" for the zero form.
std::string render_form(const Form& f, const std::vector<std::string>& names, double tol = 1e-12);

// Default coframe labels: per-letter quadruples ("abc" -> a1..a4, b1..b4, c1..c4) or,
// for a single letter, that letter numbered through the whole dimension.
std::vector<std::string> coframe_names(const std::string& letters, int dim);

}  // namespace qtorsion
