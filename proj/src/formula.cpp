#include "qtorsion/formula.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "qtorsion/multilinear.hpp"

namespace qtorsion {

namespace {

// Either a plain number or a form of positive degree.
struct Value {
  bool scalar = true;
  double s = 0.0;
  Form f;
};

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>* names, const Variables& vars,
         const HypercomplexTriple* triple = nullptr)
      : text_(text), names_(names), vars_(vars), triple_(triple) {}

  Value run() {
    Value v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int dim() const { return names_ ? static_cast<int>(names_->size()) : 0; }

  Value add(Value a, Value b, double sign) {
    if (a.scalar && b.scalar) return {true, a.s + sign * b.s, {}};
    if (a.scalar && a.s == 0.0) return {false, 0.0, b.f * sign};
    if (b.scalar && b.s == 0.0) return a;
    if (a.scalar != b.scalar || a.f.degree() != b.f.degree()) fail("sum of terms of different degree");
    return {false, 0.0, a.f + b.f * sign};
  }

  Value mul(const Value& a, const Value& b) {
    if (a.scalar && b.scalar) return {true, a.s * b.s, {}};
    if (a.scalar) return {false, 0.0, b.f * a.s};
    if (b.scalar) return {false, 0.0, a.f * b.s};
    return {false, 0.0, wedge(a.f, b.f)};
  }

  Value expr() {
    Value v = term();
    while (true) {
      if (accept('+'))
        v = add(v, term(), 1.0);
      else if (accept('-'))
        v = add(v, term(), -1.0);
      else
        return v;
    }
  }

  Value term() {
    Value v = unary();
    while (true) {
      if (accept('*')) {
        v = mul(v, unary());
      } else if (accept('/')) {
        std::size_t at = pos_;
        Value d = unary();
        if (!d.scalar) throw ParseError("division by a form", at);
        if (d.s == 0.0) throw ParseError("division by zero", at);
        v = mul(v, {true, 1.0 / d.s, {}});
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (accept('-')) return mul({true, -1.0, {}}, unary());
    if (accept('+')) return unary();
    return wedge_chain();
  }

  Value wedge_chain() {
    Value v = primary();
    while (accept('^')) {
      std::size_t at = pos_;
      Value w = primary();
      if (v.scalar || w.scalar) throw ParseError("'^' needs forms on both sides", at);
      v = mul(v, w);
    }
    return v;
  }

  Value primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Value number() {
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return {true, v, {}};
  }

  Value identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string id(text_.substr(start, pos_ - start));
    if (id == "sqrt") {
      if (!accept('(')) fail("expected '(' after sqrt");
      std::size_t at = pos_;
      Value v = expr();
      if (!accept(')')) fail("expected ')'");
      if (!v.scalar || v.s < 0.0) throw ParseError("sqrt needs a non-negative number", at);
      return {true, std::sqrt(v.s), {}};
    }
    if (triple_) {
      for (int a = 0; a < 3; ++a) {
        if (id == std::string("w") + kStructureNames[a]) return {false, 0.0, kaehler_form(*triple_, a)};
        if (id == kStructureNames[a]) {
          if (!accept('(')) fail("expected '(' after " + id);
          Value v = expr();
          if (!accept(')')) fail("expected ')'");
          if (v.scalar) return v.s == 0.0 ? v : throw ParseError(id + " applies to forms", start);
          return {false, 0.0, act_total(triple_->op(a), v.f)};
        }
      }
    }
    if (names_) {
      for (int k = 0; k < dim(); ++k)
        if ((*names_)[k] == id) return {false, 0.0, Form::basis(dim(), {k})};
    }
    auto it = vars_.find(id);
    if (it != vars_.end()) return {true, it->second, {}};
    throw ParseError("unknown symbol '" + id + "'", start);
  }

  std::string_view text_;
  const std::vector<std::string>* names_;
  const Variables& vars_;
  const HypercomplexTriple* triple_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

Form parse_form(std::string_view text, const std::vector<std::string>& names, int degree, const Variables& vars,
                const HypercomplexTriple* triple) {
  const int dim = static_cast<int>(names.size());
  Value v = Parser(text, &names, vars, triple).run();
  if (v.scalar) {
    if (degree == 0) return Form::scalar(dim, v.s);
    if (v.s == 0.0) return Form(dim, degree);
    throw ParseError("expected a " + std::to_string(degree) + "-form, got a number", 0);
  }
  if (v.f.degree() != degree)
    throw ParseError("expected a " + std::to_string(degree) + "-form, got degree " + std::to_string(v.f.degree()), 0);
  return v.f;
}

double parse_scalar(std::string_view text, const Variables& vars) {
  Value v = Parser(text, nullptr, vars).run();
  return v.s;
}

std::string render_form(const Form& f, const std::vector<std::string>& names, double tol) {
  std::string out;
  for (const auto& [m, c] : f.terms()) {
    if (std::abs(c) <= tol) continue;
    std::string mono;
    for (int k : indices_of(m)) {
      if (!mono.empty()) mono += '^';
      mono += names.at(k);
    }
    const double a = std::abs(c);
    std::string body;
    if (mono.empty())
      body = format_number(a);
    else if (std::abs(a - 1.0) <= 1e-12)
      body = mono;
    else
      body = format_number(a) + "*" + mono;
    if (out.empty())
      out = (c < 0 ? "-" : "") + body;
    else
      out += (c < 0 ? " - " : " + ") + body;
  }
  return out.empty() ? "0" : out;
}

std::vector<std::string> coframe_names(const std::string& letters, int dim) {
  std::vector<std::string> out;
  if (letters.size() == 1) {
    for (int k = 1; k <= dim; ++k) out.push_back(letters + std::to_string(k));
    return out;
  }
  if (static_cast<int>(letters.size()) * 4 != dim)
    throw std::invalid_argument("coframe letters '" + letters + "' do not cover dimension " + std::to_string(dim));
  for (char l : letters)
    for (int k = 1; k <= 4; ++k) out.push_back(std::string(1, l) + std::to_string(k));
  return out;
}

}  // namespace qtorsion
