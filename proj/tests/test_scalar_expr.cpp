#include "doctest.h"

#include <cmath>

#include "formcalc/error.hpp"
#include "formcalc/parser.hpp"
#include "formcalc/scalar_expr.hpp"
#include "formcalc/smooth_map.hpp"
#include "oracles.hpp"

using namespace formcalc;

namespace {

ScalarExpr x() { return ScalarExpr::variable(0); }
ScalarExpr y() { return ScalarExpr::variable(1); }

/// Random polynomial with occasional function atoms and a positive denominator.
ScalarExpr mixed(oracle::Rng& rng, int n) {
  ScalarExpr e = oracle::polynomial(rng, n, 3);
  switch (rng.integer(0, 4)) {
    case 0: e = e * exp(oracle::polynomial(rng, n, 1)); break;
    case 1: e = e + sin(oracle::polynomial(rng, n, 2)) * cos(ScalarExpr::variable(rng.integer(0, n - 1))); break;
    case 2: e = e / (ScalarExpr(2) + ScalarExpr::variable(rng.integer(0, n - 1)).pow(2)); break;
    case 3: e = e + sqrt(ScalarExpr(3) + ScalarExpr::variable(0).pow(2)); break;
    default: break;
  }
  return e;
}

}  // namespace

TEST_CASE("parse builds the expected expressions") {
  CHECK(parse_scalar("x*y", 2) == x() * y());
  CHECK(parse_scalar("exp(x)", 2) == exp(x()));
  CHECK(parse_scalar("0.25", 1) == ScalarExpr(make_rational(1, 4)));
  CHECK(parse_scalar("010.50", 1) == ScalarExpr(make_rational(21, 2)));
  CHECK(parse_scalar("x1 + x2", 2) == x() + y());
  CHECK(parse_scalar("t", 4) == ScalarExpr::variable(3));
  CHECK(parse_scalar("x^-2*x^3", 1) == x());
  CHECK_THROWS_AS(parse_scalar("(x*dy)", 2), ParseError);
  CHECK_THROWS_AS(parse_scalar("z", 2), ParseError);
  CHECK_THROWS_AS(parse_scalar("x +", 2), ParseError);
  try {
    parse_scalar("x + * y", 2);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("normal form identities") {
  CHECK(((x() + y()).pow(2) - x().pow(2) - ScalarExpr(2) * x() * y() - y().pow(2)).is_zero());
  CHECK((sin(x() * y()).pow(2) + cos(x() * y()).pow(2)).is_one());
  CHECK(exp(x()) * exp(y()) == exp(x() + y()));
  CHECK(sqrt(ScalarExpr(1) + x().pow(2)).pow(2) == ScalarExpr(1) + x().pow(2));
  CHECK((x() / (x().pow(2) + y().pow(2)) - x() / (x().pow(2) + y().pow(2))).is_zero());
  CHECK((ScalarExpr(1) / x() + ScalarExpr(1) / y()) == (x() + y()) / (x() * y()));
  const ScalarExpr e = parse_scalar("x*y + exp(x) - x", 2);
  CHECK(ScalarExpr::normalize(*e.to_ast()) == e);
}

TEST_CASE("differentiate") {
  CHECK(differentiate(x() * y(), 0) == y());
  CHECK(differentiate(exp(x()), 0) == exp(x()));
  CHECK(differentiate(ln(x()), 0) == ScalarExpr(1) / x());
  CHECK(differentiate(sin(x()), 0) == cos(x()));
  CHECK(differentiate(sqrt(x()), 0) == ScalarExpr(make_rational(1, 2)) / sqrt(x()));

  const ScalarExpr q = parse_scalar("x/(x^2+y^2)", 2);
  const ScalarExpr dq = differentiate(q, 0);
  const std::vector<double> p{1.0, 2.0};
  const double fd = oracle::central_difference([&](const std::vector<double>& v) { return evaluate(q, v); }, p, 0);
  CHECK(std::abs(evaluate(dq, p) - fd) <= 1e-8);
  CHECK(evaluate(dq, p) == doctest::Approx(3.0 / 25.0).epsilon(1e-15));
}

TEST_CASE("derivatives agree with central differences on random expressions") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(1, 4);
    const ScalarExpr e = mixed(rng, n);
    const int axis = rng.integer(0, n - 1);
    const ScalarExpr de = differentiate(e, axis);
    for (int k = 0; k < 10; ++k) {
      const std::vector<double> p = rng.point(n);
      const double fd =
          oracle::central_difference([&](const std::vector<double>& v) { return evaluate(e, v); }, p, axis);
      const double exact = evaluate(de, p);
      CHECK(std::abs(exact - fd) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("mixed partials commute") {
  oracle::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(2, 4);
    const ScalarExpr e = mixed(rng, n);
    const int i = rng.integer(0, n - 1), j = rng.integer(0, n - 1);
    CHECK((differentiate(differentiate(e, i), j) - differentiate(differentiate(e, j), i)).is_zero());
  }
}

TEST_CASE("print and parse round-trip") {
  oracle::Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(1, 4);
    const ScalarExpr e = mixed(rng, n);
    CHECK(parse_scalar(e.to_string(), n) == e);
  }
}

TEST_CASE("substitute") {
  const std::vector<std::string> polar{"r", "theta"};
  const ScalarExpr r2 = substitute(parse_scalar("x^2 + y^2", 2),
                                   std::vector<ScalarExpr>{parse_scalar("r*cos(theta)", polar),
                                                           parse_scalar("r*sin(theta)", polar)});
  CHECK(r2 == x().pow(2));
  oracle::Rng rng(14);
  for (int k = 0; k < 20; ++k) {
    const std::vector<double> p{rng.real(0.1, 3.0), rng.real(0.0, 6.3)};
    CHECK(std::abs(evaluate(r2, p) - p[0] * p[0]) <= 1e-12 * std::max(1.0, p[0] * p[0]));
  }
  CHECK(substitute(x(), std::vector<ScalarExpr>{x(), y()}) == x());
  CHECK(substitute(ScalarExpr(5), std::vector<ScalarExpr>{y()}) == ScalarExpr(5));
  CHECK_THROWS_AS(substitute(y(), std::vector<ScalarExpr>{x()}), DimensionError);
}

TEST_CASE("substitution obeys the chain rule") {
  oracle::Rng rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(1, 3), m = rng.integer(1, 3);
    const ScalarExpr e = oracle::polynomial(rng, m, 3);
    const SmoothMap g = oracle::polynomial_map(rng, n, m, 2);
    const ScalarExpr composed = substitute(e, g.components());
    const int j = rng.integer(0, n - 1);
    ScalarExpr expected;
    for (int i = 0; i < m; ++i) expected += substitute(differentiate(e, i), g.components()) * differentiate(g[i], j);
    CHECK((differentiate(composed, j) - expected).is_zero());
  }
}

TEST_CASE("evaluate") {
  const std::vector<double> p{2.0, 3.0};
  CHECK(evaluate(x() * y(), p) == 6.0);
  const std::vector<double> q{1.0, 0.0};
  CHECK(evaluate(exp(x()) - x(), q) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
  const std::vector<double> origin{0.0, 0.0};
  CHECK_THROWS_AS(evaluate(ScalarExpr(1) / (x().pow(2) + y().pow(2)), origin), DomainError);
  const std::vector<double> neg{-1.0};
  CHECK_THROWS_AS(evaluate(ln(x()), neg), DomainError);
  CHECK_THROWS_AS(evaluate(sqrt(x()), neg), DomainError);
  CHECK(evaluate(ScalarExpr(make_rational(1, 3)), neg) == 1.0 / 3.0);
}

TEST_CASE("integrate_polynomial") {
  const ScalarExpr t = ScalarExpr::variable(1);
  CHECK(integrate_polynomial(t, 1, ScalarExpr(0)) == ScalarExpr(make_rational(1, 2)) * t.pow(2));
  CHECK(integrate_polynomial(x().pow(2), 1, ScalarExpr(0)) == x().pow(2) * t);
  const ScalarExpr f = ScalarExpr(3) * t.pow(2) + ScalarExpr(2) * x() * t;
  const ScalarExpr F = integrate_polynomial(f, 1, ScalarExpr(0));
  CHECK(F == t.pow(3) + x() * t.pow(2));
  CHECK(differentiate(F, 1) == f);
  const ScalarExpr G = integrate_polynomial(f, 1, x());
  CHECK(differentiate(G, 1) == f);
  CHECK(substitute(G, std::vector<ScalarExpr>{x(), x()}).is_zero());
  CHECK_THROWS_AS(integrate_polynomial(exp(t), 1, ScalarExpr(0)), DomainError);
  CHECK(integrate_polynomial(exp(x()) * t, 1, ScalarExpr(0)) == exp(x()) * t.pow(2) / ScalarExpr(2));
}
