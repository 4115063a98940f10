#pragma once

// Internal rational-function algebra behind ScalarExpr.

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "formcalc/rational.hpp"
#include "formcalc/scalar_expr.hpp"

namespace formcalc::detail {

enum class GenKind : unsigned char { Var, Exp, Ln, Sin, Cos, Sqrt };

GenKind gen_kind(Func f);
Func gen_func(GenKind k);

struct Frac;
using FracPtr = std::shared_ptr<const Frac>;

/// An indeterminate of the polynomial ring: a coordinate or a function atom.
struct Gen {
  GenKind kind = GenKind::Var;
  int var = -1;
  FracPtr arg;
};

/// Three-way comparison. Coordinates sort below function atoms and axis 0 is
/// the largest coordinate, so printing in descending order reads x, y, z.
int compare(const Gen& a, const Gen& b);

/// Exponents of generators, sorted ascending by generator; all exponents > 0.
using Monomial = std::vector<std::pair<Gen, int>>;

int compare(const Monomial& a, const Monomial& b);
int degree(const Monomial& m);

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

/// Polynomial with rational coefficients, zero coefficients never stored.
using Poly = std::map<Monomial, Rational, MonoLess>;

int compare(const Poly& a, const Poly& b);

struct PolyLess {
  bool operator()(const Poly& a, const Poly& b) const { return compare(a, b) < 0; }
};

/// numerator / prod(factor^multiplicity). Factors are primitive, non-constant,
/// with positive leading coefficient, distinct and sorted; zero is 0 / 1.
struct Frac {
  Poly num;
  std::vector<std::pair<Poly, int>> den;
};

int compare(const Frac& a, const Frac& b);

Poly poly_constant(const Rational& c);
Poly poly_gen(const Gen& g, int exponent = 1);
bool is_constant(const Poly& p);
Rational constant_term(const Poly& p);

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Rational& c);
/// Product followed by the atom rewrites (exp merge, cos^2, sqrt^2).
Poly mul(const Poly& a, const Poly& b);
Poly pow(const Poly& a, int exponent);
/// Exact division in the free polynomial ring; nullopt if not divisible.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

Frac make_frac(Poly num);
Frac frac_constant(const Rational& c);
Frac frac_var(int axis);
Frac add(const Frac& a, const Frac& b);
Frac sub(const Frac& a, const Frac& b);
Frac neg(const Frac& a);
Frac mul(const Frac& a, const Frac& b);
Frac inv(const Frac& a);
Frac div(const Frac& a, const Frac& b);
Frac pow(const Frac& a, int exponent);
Frac apply(GenKind kind, const Frac& arg);

bool is_zero(const Frac& a);
bool depends_on(const Frac& a, int axis);
bool depends_on(const Gen& g, int axis);
int arity(const Frac& a);

Frac derivative(const Frac& a, int axis);
Frac substitute(const Frac& a, std::span<const Frac> images);
double evaluate(const Frac& a, std::span<const double> point);

}  // namespace formcalc::detail
