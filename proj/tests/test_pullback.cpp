#include "doctest.h"

#include <cmath>

#include "formcalc/error.hpp"
#include "formcalc/parser.hpp"
#include "formcalc/smooth_map.hpp"
#include "formcalc/tensor.hpp"
#include "oracles.hpp"

using namespace formcalc;

namespace {

const char* kPolar = "map(r,theta) = r*cos(theta); r*sin(theta)";

std::vector<std::vector<Rational>> random_matrix(oracle::Rng& rng, int rows, int cols) {
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(rows));
  for (auto& row : m)
    for (int j = 0; j < cols; ++j) row.push_back(make_rational(rng.integer(-4, 4), rng.integer(1, 3)));
  return m;
}

}  // namespace

TEST_CASE("map literal") {
  const SmoothMap g = parse_map(kPolar);
  CHECK(g.domain_dimension() == 2);
  CHECK(g.codomain_dimension() == 2);
  CHECK(map_variables(kPolar) == std::vector<std::string>{"r", "theta"});
  CHECK_THROWS_AS(parse_map("map(r) = r*s"), ParseError);
  CHECK_THROWS_AS(parse_map("r*cos(theta)"), ParseError);
}

TEST_CASE("Jacobians") {
  const SmoothMap g = parse_map(kPolar);
  const ScalarExpr det = jacobian_determinant(g);
  CHECK(det == ScalarExpr::variable(0));
  oracle::Rng rng(41);
  for (int k = 0; k < 10; ++k) {
    const std::vector<double> p{rng.real(0.1, 2.0), rng.real(0.0, 6.28)};
    const Eigen::MatrixXd j = jacobian_at(g, p);
    CHECK(j.determinant() == doctest::Approx(p[0]).epsilon(1e-12));
    for (int i = 0; i < 2; ++i) {
      for (int a = 0; a < 2; ++a) {
        const double fd = oracle::central_difference([&](const std::vector<double>& v) { return g(v)[static_cast<std::size_t>(i)]; }, p, a);
        CHECK(j(i, a) == doctest::Approx(fd).epsilon(1e-8));
      }
    }
  }
  const std::vector<double> q{0.3, -0.7, 1.1};
  CHECK(jacobian_at(SmoothMap::identity(3), q).isIdentity());
  const auto a = random_matrix(rng, 2, 3);
  const Eigen::MatrixXd ja = jacobian_at(SmoothMap::linear(a, 3), q);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) CHECK(ja(i, j) == doctest::Approx(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get_d()));
}

TEST_CASE("pullback of forms") {
  const SmoothMap g = parse_map(kPolar);
  const std::vector<std::string> polar{"r", "theta"};
  CHECK(pullback_form(g, parse_form("dx/\\dy", 2)) == parse_form("r*dr/\\dtheta", polar));
  CHECK(pullback_form(g, parse_form("x", 2)) == parse_form("r*cos(theta)", polar));
  CHECK(pullback_form(g, parse_form("dx", 2)) == parse_form("cos(theta)*dr - r*sin(theta)*dtheta", polar));
  CHECK(pullback_form(g, parse_form("x*dy - y*dx", 2)) == parse_form("r^2*dtheta", polar));
  CHECK_THROWS_AS(pullback_form(g, parse_form("dz", 3)), DimensionError);

  oracle::Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const SmoothMap h = oracle::polynomial_map(rng, 3, 3, 2);
    CHECK(pullback_form(h, volume_form(3)) == jacobian_determinant(h) * volume_form(3));
    const ScalarExpr f = oracle::polynomial(rng, 3, 3);
    CHECK(pullback_form(h, DifferentialForm::scalar(3, f)) == DifferentialForm::scalar(3, substitute(f, h.components())));
  }
}

TEST_CASE("composition") {
  const SmoothMap g = parse_map(kPolar);
  const SmoothMap radius = compose(parse_map("map(x,y) = sqrt(x^2 + y^2)"), g);
  // sqrt(r^2), which equals r on r > 0.
  CHECK(radius[0] * radius[0] == ScalarExpr::variable(0).pow(2));
  oracle::Rng rng(43);
  for (int k = 0; k < 10; ++k) {
    const std::vector<double> p{rng.real(0.1, 3.0), rng.real(-3.0, 3.0)};
    CHECK(radius(p)[0] == doctest::Approx(p[0]).epsilon(1e-13));
  }

  for (int trial = 0; trial < 20; ++trial) {
    const SmoothMap s = oracle::polynomial_map(rng, 2, 3, 2);
    const SmoothMap c = compose(SmoothMap::identity(3), s);
    for (int i = 0; i < 3; ++i) CHECK(c[i] == s[i]);

    const auto a = random_matrix(rng, 3, 2), b = random_matrix(rng, 2, 4);
    const SmoothMap ab = compose(SmoothMap::linear(a, 2), SmoothMap::linear(b, 4));
    std::vector<std::vector<Rational>> product(3, std::vector<Rational>(4));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 2; ++k)
          product[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
              a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    const SmoothMap expected = SmoothMap::linear(product, 4);
    for (int i = 0; i < 3; ++i) CHECK(ab[i] == expected[i]);

    const SmoothMap h = oracle::polynomial_map(rng, 3, 2, 2);
    const std::vector<double> p = rng.point(2);
    const Eigen::MatrixXd chained = jacobian_at(h, s(p)) * jacobian_at(s, p);
    CHECK((jacobian_at(compose(h, s), p) - chained).norm() <= 1e-10 * std::max(1.0, chained.norm()));
  }
  CHECK_THROWS_AS(compose(SmoothMap::identity(2), SmoothMap::identity(3)), DimensionError);
}

TEST_CASE("naturality, d and wedge commute with pullback") {
  oracle::Rng rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(1, 4), m = rng.integer(1, 4), p = rng.integer(1, 4);
    const SmoothMap g = oracle::polynomial_map(rng, n, m, 2);
    const SmoothMap h = oracle::polynomial_map(rng, m, p, 2);
    const DifferentialForm a = oracle::form(rng, p, rng.integer(0, p), 2);
    const DifferentialForm b = oracle::form(rng, m, rng.integer(0, m), 2);
    const DifferentialForm c = oracle::form(rng, m, rng.integer(0, m), 2);
    CHECK(pullback_form(compose(h, g), a) == pullback_form(g, pullback_form(h, a)));
    CHECK(pullback_form(g, exterior_derivative(b)) == exterior_derivative(pullback_form(g, b)));
    CHECK(pullback_form(g, wedge(b, c)) == wedge(pullback_form(g, b), pullback_form(g, c)));
  }
}

TEST_CASE("pointwise pullback matches the linear pullback of the Jacobian") {
  oracle::Rng rng(45);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.integer(1, 4), m = rng.integer(1, 4);
    const SmoothMap g = oracle::polynomial_map(rng, n, m, 2);
    const DifferentialForm a = oracle::form(rng, m, rng.integer(1, m), 2);
    const std::vector<double> p = rng.point(n);
    const AltTensor symbolic = AltTensor::from_form(pullback_form(g, a), p);
    const AltTensor linear = pullback_linear(jacobian_at(g, p), AltTensor::from_form(a, g(p)));
    for (const auto& [index, value] : linear.coefficients()) CHECK(symbolic.coefficient(index) == doctest::Approx(value).epsilon(1e-10));
    for (const auto& [index, value] : symbolic.coefficients()) CHECK(linear.coefficient(index) == doctest::Approx(value).epsilon(1e-10));
  }
}
