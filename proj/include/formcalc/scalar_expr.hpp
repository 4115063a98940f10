#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "formcalc/rational.hpp"

namespace formcalc {

namespace detail {
struct Frac;
}

/// Elementary functions allowed as atoms of a scalar expression.
enum class Func { Exp, Ln, Sin, Cos, Sqrt };

std::string_view func_name(Func f);

namespace ast {

enum class Kind { Constant, Variable, Sum, Product, Power, Quotient, Function };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Raw expression tree. Not necessarily normalized; see ScalarExpr::normalize.
struct Node {
  Kind kind = Kind::Constant;
  Rational value;   // Constant
  int axis = -1;    // Variable
  int exponent = 1; // Power (any integer)
  Func func = Func::Exp;
  std::vector<NodePtr> children;
};

NodePtr constant(const Rational& value);
NodePtr variable(int axis);
NodePtr sum(std::vector<NodePtr> terms);
NodePtr product(std::vector<NodePtr> factors);
NodePtr power(NodePtr base, int exponent);
NodePtr quotient(NodePtr numerator, NodePtr denominator);
NodePtr function(Func f, NodePtr argument);

/// Render a tree with the grammar accepted by parse_scalar.
/// Axis i prints as names[i] when given, otherwise x, y, z, t, x5, x6, ...
std::string print(const Node& node, const std::vector<std::string>& names = {});

}  // namespace ast

/// Default printed name of an axis: x, y, z, t for 0..3, then x5..x9.
std::string default_axis_name(int axis);

/// Symbolic scalar function of the coordinates, held in normal form.
///
/// The normal form is an expanded polynomial numerator over a product of
/// primitive polynomial denominator factors, with exp/ln/sin/cos/sqrt
/// applications treated as extra indeterminates subject to
/// sin^2 + cos^2 = 1, exp(a) exp(b) = exp(a + b) and sqrt(u)^2 = u.
/// Zero-testing is complete on that fragment. Values are immutable and can
/// be shared between threads.
class ScalarExpr {
 public:
  ScalarExpr();  // zero
  ScalarExpr(long value);  // NOLINT(google-explicit-constructor)
  ScalarExpr(const Rational& value);  // NOLINT(google-explicit-constructor)

  static ScalarExpr variable(int axis);
  static ScalarExpr normalize(const ast::Node& node);

  ast::NodePtr to_ast() const;
  std::string to_string(const std::vector<std::string>& names = {}) const;

  bool is_zero() const;
  bool is_one() const;
  std::optional<Rational> constant_value() const;
  /// One past the highest axis index appearing anywhere in the expression.
  int arity() const;
  bool depends_on(int axis) const;
  /// Polynomial in all coordinates, no function atoms and no denominators.
  bool is_polynomial() const;
  /// Polynomial in the given coordinate with coefficients free of it.
  bool is_polynomial_in(int axis) const;

  ScalarExpr pow(int exponent) const;

  friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator-(const ScalarExpr& a);
  ScalarExpr& operator+=(const ScalarExpr& b) { return *this = *this + b; }
  ScalarExpr& operator-=(const ScalarExpr& b) { return *this = *this - b; }
  ScalarExpr& operator*=(const ScalarExpr& b) { return *this = *this * b; }

  /// Equality of normal forms. Complete for the rational fragment: two
  /// expressions that agree as functions there compare equal.
  friend bool operator==(const ScalarExpr& a, const ScalarExpr& b);
  /// Total order on normal forms (used for canonical containers).
  friend bool operator<(const ScalarExpr& a, const ScalarExpr& b);

  const detail::Frac& frac() const { return *value_; }
  explicit ScalarExpr(std::shared_ptr<const detail::Frac> value) : value_(std::move(value)) {}

 private:
  std::shared_ptr<const detail::Frac> value_;
};

ScalarExpr apply(Func f, const ScalarExpr& argument);
inline ScalarExpr exp(const ScalarExpr& a) { return apply(Func::Exp, a); }
inline ScalarExpr ln(const ScalarExpr& a) { return apply(Func::Ln, a); }
inline ScalarExpr sin(const ScalarExpr& a) { return apply(Func::Sin, a); }
inline ScalarExpr cos(const ScalarExpr& a) { return apply(Func::Cos, a); }
inline ScalarExpr sqrt(const ScalarExpr& a) { return apply(Func::Sqrt, a); }

/// Partial derivative with respect to coordinate `axis`.
ScalarExpr differentiate(const ScalarExpr& e, int axis);

/// Simultaneous substitution x_i -> replacements[i]. Every axis used by `e`
/// must have a replacement, otherwise DimensionError.
ScalarExpr substitute(const ScalarExpr& e, std::span<const ScalarExpr> replacements);

/// Numeric value at `point`. Throws DomainError at a singularity (vanishing
/// denominator, ln of a non-positive number, sqrt of a negative number).
double evaluate(const ScalarExpr& e, std::span<const double> point);

/// Antiderivative F in `axis` with F = 0 where x_axis = lower.
/// Throws DomainError when `e` is not polynomial in `axis`.
ScalarExpr integrate_polynomial(const ScalarExpr& e, int axis, const ScalarExpr& lower);

/// Flattened evaluator for repeated numeric evaluation of one expression.
/// Rational coefficients are converted to double once, at compile time.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  explicit CompiledExpr(const ScalarExpr& e);
  double operator()(std::span<const double> point) const;

  struct Program;

 private:
  std::shared_ptr<const Program> program_;
};

}  // namespace formcalc
