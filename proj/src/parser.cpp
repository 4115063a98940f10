#include "formcalc/parser.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>

#include "formcalc/error.hpp"

namespace formcalc {

std::vector<std::pair<std::string, int>> default_variables(int dimension) {
  std::vector<std::pair<std::string, int>> out;
  const char* const aliases[] = {"x", "y", "z", "t"};
  for (int i = 0; i < 4 && i < dimension; ++i) out.emplace_back(aliases[i], i);
  for (int i = 0; i < 9 && i < dimension; ++i) out.emplace_back("x" + std::to_string(i + 1), i);
  return out;
}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Wedge, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '/':
        if (i + 1 < s.size() && s[i + 1] == '\\') {
          out.push_back({Tok::Wedge, "/\\", start});
          i += 2;
          continue;
        }
        kind = Tok::Slash;
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({kind, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

Rational parse_decimal(const std::string& text, std::size_t pos) {
  const auto dot = text.find('.');
  if (dot != std::string::npos && text.find('.', dot + 1) != std::string::npos) {
    throw ParseError("malformed number '" + text + "'", pos);
  }
  if (dot == std::string::npos) return Rational(Integer(text, 10));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  if (digits.empty()) throw ParseError("malformed number '" + text + "'", pos);
  Integer den = 1;
  for (std::size_t k = dot + 1; k < text.size(); ++k) den *= 10;
  Rational q(Integer(digits, 10), den);
  q.canonicalize();
  return q;
}

std::optional<Func> lookup_func(const std::string& name) {
  static const std::map<std::string, Func> table = {
      {"exp", Func::Exp}, {"ln", Func::Ln}, {"sin", Func::Sin}, {"cos", Func::Cos}, {"sqrt", Func::Sqrt}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

class Parser {
 public:
  Parser(std::string_view text, int dimension, std::map<std::string, int> names, bool allow_forms)
      : tokens_(lex(text)), dimension_(dimension), names_(std::move(names)), allow_forms_(allow_forms) {}

  DifferentialForm run() {
    DifferentialForm v = expr();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return v;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  ScalarExpr as_scalar(const DifferentialForm& v, std::size_t pos, const char* what) const {
    if (v.degree() != 0) throw ParseError(std::string(what) + " needs a scalar operand", pos);
    return v.coefficient({});
  }

  DifferentialForm scalar(const ScalarExpr& f) const { return DifferentialForm::scalar(dimension_, f); }

  DifferentialForm expr() {
    DifferentialForm acc = term();
    while (true) {
      const Token& t = peek();
      if (t.kind != Tok::Plus && t.kind != Tok::Minus) return acc;
      next();
      DifferentialForm rhs = term();
      if (rhs.degree() != acc.degree()) {
        throw ParseError("cannot add forms of degree " + std::to_string(acc.degree()) + " and " +
                             std::to_string(rhs.degree()),
                         t.pos);
      }
      acc = t.kind == Tok::Plus ? acc + rhs : acc - rhs;
    }
  }

  DifferentialForm term() {
    DifferentialForm acc = unary();
    while (true) {
      const Token& t = peek();
      if (t.kind == Tok::Star) {
        next();
        DifferentialForm rhs = unary();
        if (acc.degree() > 0 && rhs.degree() > 0) throw ParseError("use /\\ to multiply forms", t.pos);
        acc = wedge(acc, rhs);
      } else if (t.kind == Tok::Slash) {
        next();
        const std::size_t at = peek().pos;
        DifferentialForm rhs = unary();
        acc = (ScalarExpr(1) / as_scalar(rhs, at, "division")) * acc;
      } else if (t.kind == Tok::Wedge) {
        if (!allow_forms_) throw ParseError("wedge operator in a scalar expression", t.pos);
        next();
        acc = wedge(acc, unary());
      } else {
        return acc;
      }
    }
  }

  DifferentialForm unary() {
    if (accept(Tok::Minus)) return -unary();
    return factor();
  }

  DifferentialForm factor() {
    const std::size_t at = peek().pos;
    DifferentialForm base = primary();
    if (!accept(Tok::Caret)) return base;
    const ScalarExpr b = as_scalar(base, at, "'^'");
    const bool negative = accept(Tok::Minus);
    const Token& e = next();
    if (e.kind != Tok::Number || e.text.find('.') != std::string::npos) {
      throw ParseError("exponent must be an integer", e.pos);
    }
    const long k = std::stol(e.text);
    return scalar(b.pow(static_cast<int>(negative ? -k : k)));
  }

  DifferentialForm primary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Number:
        return scalar(ScalarExpr(parse_decimal(t.text, t.pos)));
      case Tok::LParen: {
        DifferentialForm v = expr();
        if (!accept(Tok::RParen)) throw ParseError("expected ')'", peek().pos);
        return v;
      }
      case Tok::Ident:
        return identifier(t);
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  DifferentialForm identifier(const Token& t) {
    if (auto it = names_.find(t.text); it != names_.end()) return scalar(ScalarExpr::variable(it->second));
    if (auto f = lookup_func(t.text); f && peek().kind == Tok::LParen) {
      next();
      const std::size_t at = peek().pos;
      DifferentialForm arg = expr();
      if (!accept(Tok::RParen)) throw ParseError("expected ')'", peek().pos);
      return scalar(apply(*f, as_scalar(arg, at, func_name(*f).data())));
    }
    if (t.text.size() > 1 && t.text[0] == 'd') {
      if (auto it = names_.find(t.text.substr(1)); it != names_.end()) {
        if (!allow_forms_) throw ParseError("form symbol '" + t.text + "' is not a scalar token", t.pos);
        return DifferentialForm::differential(dimension_, it->second);
      }
    }
    throw ParseError("unknown variable '" + t.text + "'", t.pos);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int dimension_;
  std::map<std::string, int> names_;
  bool allow_forms_;
};

std::map<std::string, int> default_table(int dimension) {
  std::map<std::string, int> out;
  for (auto& [name, axis] : default_variables(dimension)) out.emplace(name, axis);
  return out;
}

std::map<std::string, int> named_table(const std::vector<std::string>& names) {
  std::map<std::string, int> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!out.emplace(names[i], static_cast<int>(i)).second) throw ParseError("duplicate variable '" + names[i] + "'", 0);
  }
  return out;
}

}  // namespace

ScalarExpr parse_scalar(std::string_view text, int dimension) {
  return Parser(text, dimension, default_table(dimension), false).run().coefficient({});
}

ScalarExpr parse_scalar(std::string_view text, const std::vector<std::string>& variable_names) {
  return Parser(text, static_cast<int>(variable_names.size()), named_table(variable_names), false).run().coefficient({});
}

DifferentialForm parse_form(std::string_view text, int dimension) {
  return Parser(text, dimension, default_table(dimension), true).run();
}

DifferentialForm parse_form(std::string_view text, const std::vector<std::string>& variable_names) {
  return Parser(text, static_cast<int>(variable_names.size()), named_table(variable_names), true).run();
}

std::vector<std::string> map_variables(std::string_view text) {
  const auto open = text.find('(');
  const auto close = text.find(')');
  const auto head = text.substr(0, open == std::string_view::npos ? 0 : open);
  std::string trimmed;
  for (char c : head) {
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
  }
  if (open == std::string_view::npos || close == std::string_view::npos || close < open || trimmed != "map") {
    throw ParseError("map literal must start with map(<variables>) =", 0);
  }
  std::vector<std::string> names;
  std::string current;
  for (std::size_t i = open + 1; i < close; ++i) {
    const char c = text[i];
    if (c == ',') {
      names.push_back(current);
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current += c;
    }
  }
  if (!current.empty()) names.push_back(current);
  for (const auto& n : names) {
    if (n.empty()) throw ParseError("empty variable name in map header", open);
  }
  return names;
}

SmoothMap parse_map(std::string_view text) {
  std::vector<std::string> names = map_variables(text);
  const auto close = text.find(')');
  auto eq = text.find('=', close);
  if (eq == std::string_view::npos) throw ParseError("map literal needs '='", close);
  std::vector<ScalarExpr> components;
  std::size_t start = eq + 1;
  while (true) {
    const auto semi = text.find(';', start);
    const auto piece = text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    try {
      components.push_back(parse_scalar(piece, names));
    } catch (const ParseError& e) {
      throw ParseError(std::string("map component: ") + e.what(), start + e.position());
    }
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return SmoothMap(static_cast<int>(names.size()), std::move(components));
}

double parse_number(std::string_view text) {
  const ScalarExpr e = parse_scalar(text, std::vector<std::string>{"pi", "e"});
  const double point[] = {std::numbers::pi, std::numbers::e};
  return evaluate(e, point);
}

}  // namespace formcalc
