#include "formcalc/scalar_expr.hpp"

#include <cmath>
#include <sstream>

#include "algebra.hpp"
#include "formcalc/error.hpp"

namespace formcalc {

using detail::Frac;
using detail::GenKind;

std::string_view func_name(Func f) {
  switch (f) {
    case Func::Exp: return "exp";
    case Func::Ln: return "ln";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Sqrt: return "sqrt";
  }
  return "?";
}

std::string default_axis_name(int axis) {
  static const char* const kNames[] = {"x", "y", "z", "t"};
  if (axis >= 0 && axis < 4) return kNames[axis];
  return "x" + std::to_string(axis + 1);
}

// ---------------------------------------------------------------------------
// AST

namespace ast {

namespace {

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

}  // namespace

NodePtr constant(const Rational& value) {
  Node n;
  n.kind = Kind::Constant;
  n.value = value;
  return make(std::move(n));
}

NodePtr variable(int axis) {
  Node n;
  n.kind = Kind::Variable;
  n.axis = axis;
  return make(std::move(n));
}

NodePtr sum(std::vector<NodePtr> terms) {
  Node n;
  n.kind = Kind::Sum;
  n.children = std::move(terms);
  return make(std::move(n));
}

NodePtr product(std::vector<NodePtr> factors) {
  Node n;
  n.kind = Kind::Product;
  n.children = std::move(factors);
  return make(std::move(n));
}

NodePtr power(NodePtr base, int exponent) {
  Node n;
  n.kind = Kind::Power;
  n.exponent = exponent;
  n.children = {std::move(base)};
  return make(std::move(n));
}

NodePtr quotient(NodePtr numerator, NodePtr denominator) {
  Node n;
  n.kind = Kind::Quotient;
  n.children = {std::move(numerator), std::move(denominator)};
  return make(std::move(n));
}

NodePtr function(Func f, NodePtr argument) {
  Node n;
  n.kind = Kind::Function;
  n.func = f;
  n.children = {std::move(argument)};
  return make(std::move(n));
}

namespace {

// Binding strength: sum 1, product/quotient 2, power 3, atom 4.
int precedence(const Node& n) {
  switch (n.kind) {
    case Kind::Sum: return n.children.size() == 1 ? precedence(*n.children[0]) : 1;
    case Kind::Product: return n.children.size() == 1 ? precedence(*n.children[0]) : 2;
    case Kind::Quotient: return 2;
    case Kind::Power: return 3;
    case Kind::Constant: return (sgn(n.value) < 0 || n.value.get_den() != 1) ? 2 : 4;
    case Kind::Variable:
    case Kind::Function: return 4;
  }
  return 0;
}

bool is_negative(const Node& n) {
  switch (n.kind) {
    case Kind::Constant: return sgn(n.value) < 0;
    case Kind::Product: return !n.children.empty() && is_negative(*n.children.front());
    case Kind::Quotient: return is_negative(*n.children.front());
    default: return false;
  }
}

NodePtr negated(const Node& n) {
  switch (n.kind) {
    case Kind::Constant: return constant(-n.value);
    case Kind::Product: {
      std::vector<NodePtr> factors = n.children;
      const Rational c = -factors.front()->value;
      if (c == 1 && factors.size() > 1) {
        factors.erase(factors.begin());
      } else {
        factors.front() = constant(c);
      }
      return factors.size() == 1 ? factors.front() : product(std::move(factors));
    }
    case Kind::Quotient: return quotient(negated(*n.children[0]), n.children[1]);
    default: return product({constant(-1), std::make_shared<const Node>(n)});
  }
}

struct Printer {
  const std::vector<std::string>& names;
  std::ostringstream out;

  std::string name(int axis) const {
    if (axis >= 0 && static_cast<std::size_t>(axis) < names.size()) return names[static_cast<std::size_t>(axis)];
    return default_axis_name(axis);
  }

  void emit(const Node& n, int min_prec) {
    const bool wrap = precedence(n) < min_prec;
    if (wrap) out << '(';
    emit_raw(n);
    if (wrap) out << ')';
  }

  void emit_raw(const Node& n) {
    switch (n.kind) {
      case Kind::Constant:
        out << n.value.get_str();
        break;
      case Kind::Variable:
        out << name(n.axis);
        break;
      case Kind::Function:
        out << func_name(n.func) << '(';
        emit(*n.children[0], 0);
        out << ')';
        break;
      case Kind::Power:
        emit(*n.children[0], 4);
        out << '^' << n.exponent;
        break;
      case Kind::Quotient:
        emit(*n.children[0], 2);
        out << '/';
        emit(*n.children[1], 3);
        break;
      case Kind::Sum:
        if (n.children.empty()) {
          out << '0';
          break;
        }
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          const Node& c = *n.children[i];
          if (i == 0) {
            emit(c, 1);
          } else if (is_negative(c)) {
            out << " - ";
            emit(*negated(c), 2);
          } else {
            out << " + ";
            emit(c, 2);
          }
        }
        break;
      case Kind::Product: {
        if (n.children.empty()) {
          out << '1';
          break;
        }
        std::size_t start = 0;
        const Node& first = *n.children[0];
        if (first.kind == Kind::Constant && n.children.size() > 1) {
          if (first.value == -1) {
            out << '-';
            start = 1;
          } else {
            out << first.value.get_str() << '*';
            start = 1;
          }
        }
        for (std::size_t i = start; i < n.children.size(); ++i) {
          if (i > start) out << '*';
          emit(*n.children[i], i == 0 ? 2 : 3);
        }
        break;
      }
    }
  }
};

}  // namespace

std::string print(const Node& node, const std::vector<std::string>& names) {
  Printer p{names, {}};
  p.emit(node, 0);
  return p.out.str();
}

}  // namespace ast

// ---------------------------------------------------------------------------
// Normal form <-> tree

namespace {

const std::shared_ptr<const Frac>& zero_frac() {
  static const auto z = std::make_shared<const Frac>();
  return z;
}

ScalarExpr wrap(Frac f) { return ScalarExpr(std::make_shared<const Frac>(std::move(f))); }

Frac to_frac(const ast::Node& n) {
  switch (n.kind) {
    case ast::Kind::Constant: return detail::frac_constant(n.value);
    case ast::Kind::Variable:
      if (n.axis < 0) throw DimensionError("negative axis index");
      return detail::frac_var(n.axis);
    case ast::Kind::Sum: {
      Frac acc;
      for (const auto& c : n.children) acc = detail::add(acc, to_frac(*c));
      return acc;
    }
    case ast::Kind::Product: {
      Frac acc = detail::frac_constant(1);
      for (const auto& c : n.children) acc = detail::mul(acc, to_frac(*c));
      return acc;
    }
    case ast::Kind::Power: return detail::pow(to_frac(*n.children.at(0)), n.exponent);
    case ast::Kind::Quotient:
      return detail::div(to_frac(*n.children.at(0)), to_frac(*n.children.at(1)));
    case ast::Kind::Function:
      return detail::apply(detail::gen_kind(n.func), to_frac(*n.children.at(0)));
  }
  return {};
}

ast::NodePtr frac_to_ast(const Frac& f);

ast::NodePtr gen_to_ast(const detail::Gen& g) {
  if (g.kind == GenKind::Var) return ast::variable(g.var);
  return ast::function(detail::gen_func(g.kind), frac_to_ast(*g.arg));
}

ast::NodePtr poly_to_ast(const detail::Poly& p) {
  if (p.empty()) return ast::constant(0);
  std::vector<ast::NodePtr> terms;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [m, c] = *it;
    std::vector<ast::NodePtr> factors;
    if (m.empty() || c != 1) factors.push_back(ast::constant(c));
    // descending generator order within a term
    for (auto g = m.rbegin(); g != m.rend(); ++g) {
      ast::NodePtr base = gen_to_ast(g->first);
      factors.push_back(g->second == 1 ? base : ast::power(base, g->second));
    }
    terms.push_back(factors.size() == 1 ? factors.front() : ast::product(std::move(factors)));
  }
  return terms.size() == 1 ? terms.front() : ast::sum(std::move(terms));
}

ast::NodePtr frac_to_ast(const Frac& f) {
  ast::NodePtr num = poly_to_ast(f.num);
  if (f.den.empty()) return num;
  std::vector<ast::NodePtr> factors;
  for (const auto& [q, m] : f.den) {
    ast::NodePtr base = poly_to_ast(q);
    factors.push_back(m == 1 ? base : ast::power(base, m));
  }
  return ast::quotient(num, factors.size() == 1 ? factors.front() : ast::product(std::move(factors)));
}

}  // namespace

ScalarExpr::ScalarExpr() : value_(zero_frac()) {}

ScalarExpr::ScalarExpr(long value) : ScalarExpr(Rational(value)) {}

ScalarExpr::ScalarExpr(const Rational& value)
    : value_(sgn(value) == 0 ? zero_frac() : std::make_shared<const Frac>(detail::frac_constant(value))) {}

ScalarExpr ScalarExpr::variable(int axis) {
  if (axis < 0) throw DimensionError("negative axis index");
  return wrap(detail::frac_var(axis));
}

ScalarExpr ScalarExpr::normalize(const ast::Node& node) { return wrap(to_frac(node)); }

ast::NodePtr ScalarExpr::to_ast() const { return frac_to_ast(*value_); }

std::string ScalarExpr::to_string(const std::vector<std::string>& names) const {
  return ast::print(*to_ast(), names);
}

bool ScalarExpr::is_zero() const { return detail::is_zero(*value_); }

bool ScalarExpr::is_one() const {
  auto c = constant_value();
  return c && *c == 1;
}

std::optional<Rational> ScalarExpr::constant_value() const {
  if (!value_->den.empty() || !detail::is_constant(value_->num)) return std::nullopt;
  return detail::constant_term(value_->num);
}

int ScalarExpr::arity() const { return detail::arity(*value_); }

bool ScalarExpr::depends_on(int axis) const { return detail::depends_on(*value_, axis); }

bool ScalarExpr::is_polynomial() const {
  if (!value_->den.empty()) return false;
  for (const auto& [m, c] : value_->num) {
    for (const auto& [g, e] : m) {
      if (g.kind != GenKind::Var) return false;
    }
  }
  return true;
}

bool ScalarExpr::is_polynomial_in(int axis) const {
  for (const auto& [f, m] : value_->den) {
    for (const auto& [mono, c] : f) {
      for (const auto& [g, e] : mono) {
        if (detail::depends_on(g, axis)) return false;
      }
    }
  }
  for (const auto& [m, c] : value_->num) {
    for (const auto& [g, e] : m) {
      if (g.kind != GenKind::Var && detail::depends_on(g, axis)) return false;
    }
  }
  return true;
}

ScalarExpr ScalarExpr::pow(int exponent) const { return wrap(detail::pow(*value_, exponent)); }

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return wrap(detail::add(*a.value_, *b.value_));
}

ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
  if (b.is_zero()) return a;
  return wrap(detail::sub(*a.value_, *b.value_));
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return wrap(detail::mul(*a.value_, *b.value_));
}

ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
  return wrap(detail::div(*a.value_, *b.value_));
}

ScalarExpr operator-(const ScalarExpr& a) { return wrap(detail::neg(*a.value_)); }

bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
  return a.value_ == b.value_ || detail::compare(*a.value_, *b.value_) == 0;
}

bool operator<(const ScalarExpr& a, const ScalarExpr& b) {
  return detail::compare(*a.value_, *b.value_) < 0;
}

ScalarExpr apply(Func f, const ScalarExpr& argument) {
  return wrap(detail::apply(detail::gen_kind(f), argument.frac()));
}

ScalarExpr differentiate(const ScalarExpr& e, int axis) {
  if (axis < 0) throw DimensionError("negative axis index");
  return wrap(detail::derivative(e.frac(), axis));
}

ScalarExpr substitute(const ScalarExpr& e, std::span<const ScalarExpr> replacements) {
  if (static_cast<std::size_t>(e.arity()) > replacements.size()) {
    throw DimensionError("substitute: expression uses " + std::to_string(e.arity()) + " axes but " +
                         std::to_string(replacements.size()) + " replacements were given");
  }
  std::vector<Frac> images;
  images.reserve(replacements.size());
  for (const auto& r : replacements) images.push_back(r.frac());
  return wrap(detail::substitute(e.frac(), images));
}

double evaluate(const ScalarExpr& e, std::span<const double> point) {
  if (static_cast<std::size_t>(e.arity()) > point.size()) {
    throw DimensionError("evaluate: point has " + std::to_string(point.size()) + " coordinates, expression uses " +
                         std::to_string(e.arity()));
  }
  return detail::evaluate(e.frac(), point);
}

ScalarExpr integrate_polynomial(const ScalarExpr& e, int axis, const ScalarExpr& lower) {
  if (!e.is_polynomial_in(axis)) {
    throw DomainError("integrate_polynomial: expression is not polynomial in " + default_axis_name(axis));
  }
  const Frac& f = e.frac();
  detail::Poly antiderivative;
  const detail::Gen var{GenKind::Var, axis, nullptr};
  for (const auto& [m, c] : f.num) {
    detail::Monomial raised = m;
    int p = 0;
    bool found = false;
    for (auto& [g, k] : raised) {
      if (g.kind == GenKind::Var && g.var == axis) {
        p = k;
        k += 1;
        found = true;
      }
    }
    if (!found) {
      auto pos = raised.begin();
      while (pos != raised.end() && detail::compare(pos->first, var) < 0) ++pos;
      raised.insert(pos, {var, 1});
    }
    antiderivative.emplace(std::move(raised), c / (p + 1));
  }
  Frac upper;
  upper.num = std::move(antiderivative);
  upper.den = f.den;
  const ScalarExpr big_f = wrap(upper);
  std::vector<ScalarExpr> images;
  const int n = std::max({big_f.arity(), lower.arity(), axis + 1});
  for (int i = 0; i < n; ++i) images.push_back(i == axis ? lower : ScalarExpr::variable(i));
  return big_f - substitute(big_f, images);
}

// ---------------------------------------------------------------------------
// Compiled evaluation

struct CompiledExpr::Program {
  struct Atom {
    GenKind kind;
    int var;
    std::shared_ptr<const Program> arg;
  };
  struct PolyCode {
    std::vector<double> coeffs;
    std::vector<std::vector<std::pair<int, int>>> terms;  // (atom, exponent)
  };
  std::vector<Atom> atoms;
  PolyCode num;
  std::vector<std::pair<PolyCode, int>> den;

  double run(std::span<const double> point) const {
    double stack_buf[16];
    std::vector<double> heap;
    double* values = stack_buf;
    if (atoms.size() > 16) {
      heap.resize(atoms.size());
      values = heap.data();
    }
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const Atom& a = atoms[i];
      if (a.kind == GenKind::Var) {
        values[i] = point[static_cast<std::size_t>(a.var)];
        continue;
      }
      const double v = a.arg->run(point);
      switch (a.kind) {
        case GenKind::Exp: values[i] = std::exp(v); break;
        case GenKind::Ln:
          if (!(v > 0)) throw DomainError("ln of non-positive value");
          values[i] = std::log(v);
          break;
        case GenKind::Sin: values[i] = std::sin(v); break;
        case GenKind::Cos: values[i] = std::cos(v); break;
        case GenKind::Sqrt:
          if (v < 0) throw DomainError("sqrt of negative value");
          values[i] = std::sqrt(v);
          break;
        case GenKind::Var: break;
      }
    }
    auto eval_poly = [&](const PolyCode& p) {
      double s = 0;
      for (std::size_t t = 0; t < p.coeffs.size(); ++t) {
        double term = p.coeffs[t];
        for (const auto& [atom, e] : p.terms[t]) {
          const double v = values[atom];
          switch (e) {
            case 1: term *= v; break;
            case 2: term *= v * v; break;
            case 3: term *= v * v * v; break;
            default: term *= std::pow(v, e);
          }
        }
        s += term;
      }
      return s;
    };
    double d = 1;
    for (const auto& [p, m] : den) {
      const double v = eval_poly(p);
      if (v == 0) throw DomainError("division by zero");
      d *= std::pow(v, m);
    }
    return eval_poly(num) / d;
  }
};

namespace {

std::shared_ptr<const CompiledExpr::Program> compile(const Frac& f) {
  auto prog = std::make_shared<CompiledExpr::Program>();
  std::vector<detail::Gen> seen;
  auto atom_index = [&](const detail::Gen& g) {
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (detail::compare(seen[i], g) == 0) return static_cast<int>(i);
    }
    seen.push_back(g);
    prog->atoms.push_back({g.kind, g.var, g.kind == GenKind::Var ? nullptr : compile(*g.arg)});
    return static_cast<int>(seen.size() - 1);
  };
  auto code = [&](const detail::Poly& p) {
    CompiledExpr::Program::PolyCode out;
    for (const auto& [m, c] : p) {
      out.coeffs.push_back(c.get_d());
      std::vector<std::pair<int, int>> t;
      for (const auto& [g, e] : m) t.emplace_back(atom_index(g), e);
      out.terms.push_back(std::move(t));
    }
    return out;
  };
  prog->num = code(f.num);
  for (const auto& [q, m] : f.den) prog->den.emplace_back(code(q), m);
  return prog;
}

}  // namespace

CompiledExpr::CompiledExpr(const ScalarExpr& e) : program_(compile(e.frac())) {}

double CompiledExpr::operator()(std::span<const double> point) const {
  if (!program_) return 0;
  return program_->run(point);
}

}  // namespace formcalc
