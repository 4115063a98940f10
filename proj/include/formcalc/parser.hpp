#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "formcalc/form.hpp"
#include "formcalc/scalar_expr.hpp"
#include "formcalc/smooth_map.hpp"

namespace formcalc {

/// Variable names for R^n: x, y, z, t alias axes 0..3 and x1..x9 alias 0..8,
/// restricted to axes < n.
std::vector<std::pair<std::string, int>> default_variables(int dimension);

/// Parse a scalar expression.
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := '-' unary | factor
///   factor := base ('^' ['-'] integer)?
///   base   := number | ident | '(' expr ')' | func '(' expr ')'
///
/// Decimal literals are read exactly (0.25 is 1/4). Throws ParseError with the
/// offending position on syntax errors, unknown variables, and form symbols.
ScalarExpr parse_scalar(std::string_view text, int dimension);
ScalarExpr parse_scalar(std::string_view text, const std::vector<std::string>& variable_names);

/// Parse a differential form: the scalar grammar plus basis atoms dx, dy, dz,
/// dt, dx1..dx9 and the wedge operator `/\`, e.g. `x*dy/\dz - y*dx/\dz`.
DifferentialForm parse_form(std::string_view text, int dimension);
DifferentialForm parse_form(std::string_view text, const std::vector<std::string>& variable_names);

/// `map(r,theta) = r*cos(theta); r*sin(theta)`.
SmoothMap parse_map(std::string_view text);
/// Variable names declared in a map literal header.
std::vector<std::string> map_variables(std::string_view text);

/// Numeric constant expression; `pi` and `e` are available. Used for box bounds.
double parse_number(std::string_view text);

}  // namespace formcalc
