#pragma once

// Text forms: scalar expressions, states such as "2*w(-1)|0> + w(-4)|0>",
// and algebra description files.

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "pbw.hpp"
#include "scalar.hpp"

namespace vadef {

namespace text {

enum class Tok { Number, Ident, LParen, RParen, Plus, Minus, Star, Slash, Caret, Equals, Vacuum, End };

struct Token {
  Tok kind;
  std::string value;
  int line;
  int column;
};

inline std::vector<Token> tokenize(const std::string& src, int line = 1, int column = 1) {
  std::vector<Token> out;
  std::size_t i = 0;
  int col = column;
  while (i < src.size()) {
    char ch = src[i];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      ++col;
      continue;
    }
    const int start = col;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, src.substr(i, j - i), line, start});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), line, start});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (src.compare(i, 3, "|0>") == 0) {
      out.push_back({Tok::Vacuum, "|0>", line, start});
      i += 3;
      col += 3;
      continue;
    }
    Tok k;
    switch (ch) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '=': k = Tok::Equals; break;
      default: throw ParseError(std::string("unexpected character '") + ch + "'", line, start);
    }
    out.push_back({k, std::string(1, ch), line, start});
    ++i;
    ++col;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

/// Recursive-descent parser over a token stream.  Generator names (if any)
/// turn "name(-k)" sequences ending in |0> into PBW monomials.
class Parser {
 public:
  Parser(std::vector<Token> toks, const AlgebraSpec* spec, std::string param, bool any_param)
      : toks_(std::move(toks)), spec_(spec), param_(std::move(param)), any_param_(any_param) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  [[noreturn]] void fail(const std::string& msg, const Token& t) const { throw ParseError(msg, t.line, t.column); }
  const Token& expect(Tok k, const std::string& what) {
    if (!at(k)) fail("expected " + what, peek());
    return next();
  }
  void expect_end() {
    if (!at(Tok::End)) fail("unexpected trailing input '" + peek().value + "'", peek());
  }
  const std::string& parameter() const { return param_; }

  Scalar scalar_expr() {
    Scalar acc = scalar_term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      bool minus = next().kind == Tok::Minus;
      Scalar t = scalar_term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  long integer() {
    bool neg = false;
    if (at(Tok::Minus)) {
      next();
      neg = true;
    } else if (at(Tok::Plus)) {
      next();
    }
    const Token& t = expect(Tok::Number, "integer");
    long v = 0;
    try {
      v = std::stol(t.value);
    } catch (...) {
      fail("integer out of range", t);
    }
    return neg ? -v : v;
  }

  /// sum of terms, each a product of scalar factors and at most one monomial.
  State state_expr() {
    State acc;
    bool first = true;
    while (true) {
      Scalar sign(1);
      if (!first) {
        if (at(Tok::Plus)) {
          next();
        } else if (at(Tok::Minus)) {
          next();
          sign = Scalar(-1);
        } else {
          break;
        }
      }
      while (at(Tok::Plus) || at(Tok::Minus))
        if (next().kind == Tok::Minus) sign = -sign;
      const Token& start = peek();
      auto [coef, mono] = state_term();
      coef *= sign;
      if (!mono) {
        if (!coef.is_zero()) fail("term has no monomial", start);
      } else {
        acc.add(*mono, coef);
      }
      first = false;
    }
    return acc;
  }

 private:
  bool starts_monomial() const {
    return at(Tok::Vacuum) || (at(Tok::Ident) && peek(1).kind == Tok::LParen && spec_ != nullptr);
  }

  PbwMonomial monomial() {
    std::vector<Factor> fs;
    const Token& start = peek();
    while (!at(Tok::Vacuum)) {
      const Token& name = expect(Tok::Ident, "generator name or |0>");
      auto g = spec_->find(name.value);
      if (!g) fail("unknown generator '" + name.value + "'", name);
      expect(Tok::LParen, "'('");
      const Token& num_tok = peek();
      long n = integer();
      expect(Tok::RParen, "')'");
      if (n >= 0) fail("monomial factors must be creation modes with negative index", num_tok);
      fs.push_back(spec_->factor(*g, static_cast<int>(-n)));
    }
    next();
    PbwMonomial m = PbwMonomial::from_canonical(fs);
    if (!m.is_canonical()) fail("monomial factors are not in canonical order", start);
    return m;
  }

  std::pair<Scalar, std::optional<PbwMonomial>> state_term() {
    Scalar coef(1);
    std::optional<PbwMonomial> mono;
    bool divide = false;
    while (true) {
      if (starts_monomial()) {
        const Token& t = peek();
        if (mono) fail("term has two monomials", t);
        if (divide) fail("cannot divide by a monomial", t);
        mono = monomial();
      } else {
        Scalar f = scalar_power();
        if (divide) {
          if (f.is_zero()) fail("division by zero", peek());
          coef /= f;
        } else {
          coef *= f;
        }
      }
      if (at(Tok::Star)) {
        next();
        divide = false;
      } else if (at(Tok::Slash)) {
        next();
        divide = true;
      } else {
        break;
      }
    }
    return {coef, mono};
  }

  Scalar scalar_term() {
    Scalar acc = scalar_unary();
    while (at(Tok::Star) || at(Tok::Slash)) {
      const Token& op = next();
      Scalar f = scalar_unary();
      if (op.kind == Tok::Star) {
        acc *= f;
      } else {
        if (f.is_zero()) fail("division by zero", op);
        acc /= f;
      }
    }
    return acc;
  }

  Scalar scalar_unary() {
    if (at(Tok::Minus)) {
      next();
      return -scalar_unary();
    }
    if (at(Tok::Plus)) {
      next();
      return scalar_unary();
    }
    return scalar_power();
  }

  Scalar scalar_power() {
    Scalar base = scalar_atom();
    if (at(Tok::Caret)) {
      next();
      const Token& t = expect(Tok::Number, "exponent");
      long e = std::stol(t.value);
      Scalar r(1);
      for (long k = 0; k < e; ++k) r *= base;
      return r;
    }
    return base;
  }

  Scalar scalar_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      next();
      return Scalar(Rational(Integer(t.value)));
    }
    if (t.kind == Tok::Ident) {
      next();
      if (any_param_ && param_.empty()) param_ = t.value;
      if (t.value != param_) fail("unknown symbol '" + t.value + "'", t);
      return Scalar::parameter(t.value);
    }
    if (t.kind == Tok::LParen) {
      next();
      Scalar s = scalar_expr();
      expect(Tok::RParen, "')'");
      return s;
    }
    fail("expected a number, parameter or '('", t);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const AlgebraSpec* spec_;
  std::string param_;
  bool any_param_;
};

}  // namespace text

/// Parses a scalar such as "(3*(c-2))/(2*(22+5*c))".  The parameter name is
/// fixed by `param`, or taken from the input when `param` is empty.
inline Scalar parse_scalar(const std::string& s, const std::string& param = "") {
  text::Parser p(text::tokenize(s), nullptr, param, param.empty());
  Scalar v = p.scalar_expr();
  p.expect_end();
  return v;
}

inline State parse_state(const std::string& s, const AlgebraSpec& spec) {
  text::Parser p(text::tokenize(s), &spec, spec.parameter, false);
  State v = p.state_expr();
  p.expect_end();
  return v;
}

inline PbwMonomial parse_monomial(const std::string& s, const AlgebraSpec& spec) {
  State st = parse_state(s, spec);
  if (st.size() != 1 || !st.begin()->second.is_one()) throw ParseError("expected a single monomial", 1, 1);
  return st.begin()->first;
}

/// Reads the line-oriented algebra format:
///   name <word>                       (optional)
///   field Q | field Q(<param>)
///   gen <name> weight <positive-int>
///   ope <name>(<alpha>) <name> = <state>
/// '#' starts a comment.  Entries are given for ordered pairs only.
inline AlgebraSpec parse_algebra(const std::string& src) {
  AlgebraSpec spec;
  spec.name = "custom";
  bool have_field = false;
  std::istringstream in(src);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    auto toks = text::tokenize(line, lineno, 1);
    if (toks.front().kind == text::Tok::End) continue;
    text::Parser p(toks, &spec, spec.parameter, false);
    const auto& kw = p.expect(text::Tok::Ident, "keyword");
    if (kw.value == "name") {
      spec.name = p.expect(text::Tok::Ident, "algebra name").value;
      p.expect_end();
    } else if (kw.value == "field") {
      if (have_field) p.fail("duplicate field declaration", kw);
      const auto& f = p.expect(text::Tok::Ident, "Q");
      if (f.value != "Q") p.fail("only Q and Q(<param>) are supported", f);
      if (p.at(text::Tok::LParen)) {
        p.next();
        spec.parameter = p.expect(text::Tok::Ident, "parameter name").value;
        p.expect(text::Tok::RParen, "')'");
      }
      p.expect_end();
      have_field = true;
    } else if (kw.value == "gen") {
      if (!have_field) p.fail("field must be declared before generators", kw);
      const auto& name = p.expect(text::Tok::Ident, "generator name");
      if (spec.find(name.value)) p.fail("duplicate generator '" + name.value + "'", name);
      if (name.value == spec.parameter) p.fail("generator name clashes with the parameter", name);
      const auto& w = p.expect(text::Tok::Ident, "'weight'");
      if (w.value != "weight") p.fail("expected 'weight'", w);
      long wt = p.integer();
      p.expect_end();
      if (wt <= 0)
        throw ValidationFailure("generator '" + name.value + "' has weight " + std::to_string(wt) +
                                "; weights must be positive");
      spec.generators.push_back({name.value, static_cast<int>(wt)});
    } else if (kw.value == "ope") {
      const auto& a = p.expect(text::Tok::Ident, "generator name");
      auto ga = spec.find(a.value);
      if (!ga) p.fail("unknown generator '" + a.value + "'", a);
      p.expect(text::Tok::LParen, "'('");
      const auto& at_alpha = p.peek();
      long alpha = p.integer();
      p.expect(text::Tok::RParen, "')'");
      const auto& b = p.expect(text::Tok::Ident, "generator name");
      auto gb = spec.find(b.value);
      if (!gb) p.fail("unknown generator '" + b.value + "'", b);
      p.expect(text::Tok::Equals, "'='");
      if (*ga > *gb) p.fail("entries must list the earlier generator first", a);
      if (alpha < 0 || alpha > spec.top(*ga, *gb)) p.fail("mode index out of range", at_alpha);
      if (spec.ope.find(*ga, *gb, static_cast<int>(alpha))) p.fail("duplicate entry", a);
      State s = p.state_expr();
      p.expect_end();
      spec.ope.set(*ga, *gb, static_cast<int>(alpha), std::move(s));
    } else {
      p.fail("unknown keyword '" + kw.value + "'", kw);
    }
  }
  if (!have_field) throw ParseError("missing field declaration", lineno + 1, 1);
  if (spec.generators.empty()) throw ParseError("no generators declared", lineno + 1, 1);
  if (!spec.parameter.empty()) spec.parameter_values.push_back({spec.parameter, spec.parameter});
  return spec;
}

inline std::string render_algebra(const AlgebraSpec& spec) {
  std::string out = "name " + spec.name + "\n";
  out += spec.parameter.empty() ? "field Q\n" : "field Q(" + spec.parameter + ")\n";
  for (const auto& g : spec.generators) out += "gen " + g.name + " weight " + std::to_string(g.weight) + "\n";
  const auto names = spec.names();
  for (const auto& [key, s] : spec.ope.entries()) {
    auto [i, j, a] = key;
    out += "ope " + names[i] + "(" + std::to_string(a) + ") " + names[j] + " = " + render_state(s, names) + "\n";
  }
  return out;
}

}  // namespace vadef
