#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "formcalc/form.hpp"
#include "formcalc/scalar_expr.hpp"

namespace formcalc {

/// Smooth map R^n -> R^m given by m symbolic components in n variables.
class SmoothMap {
 public:
  SmoothMap(int domain_dimension, std::vector<ScalarExpr> components);

  static SmoothMap identity(int dimension);
  /// x -> A x for an m x n matrix of rationals (row-major, rows = outputs).
  static SmoothMap linear(const std::vector<std::vector<Rational>>& matrix, int domain_dimension);

  int domain_dimension() const { return domain_dimension_; }
  int codomain_dimension() const { return static_cast<int>(components_.size()); }
  const std::vector<ScalarExpr>& components() const { return components_; }
  const ScalarExpr& operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }

  std::vector<double> operator()(std::span<const double> point) const;

 private:
  int domain_dimension_;
  std::vector<ScalarExpr> components_;
};

using SymbolicMatrix = std::vector<std::vector<ScalarExpr>>;

/// Entry (i, j) = d g^i / d x^j.
SymbolicMatrix jacobian_symbolic(const SmoothMap& g);
Eigen::MatrixXd jacobian_at(const SmoothMap& g, std::span<const double> point);
/// det of the Jacobian of a map R^n -> R^n.
ScalarExpr jacobian_determinant(const SmoothMap& g);

/// g^* a = sum_I a_I(g(x)) dg^{i_1} ^ ... ^ dg^{i_k}.
DifferentialForm pullback_form(const SmoothMap& g, const DifferentialForm& a);

/// h o g.
SmoothMap compose(const SmoothMap& h, const SmoothMap& g);

/// Numeric evaluator of a map and its Jacobian, compiled once.
class CompiledMap {
 public:
  explicit CompiledMap(const SmoothMap& g);

  int domain_dimension() const { return n_; }
  int codomain_dimension() const { return m_; }
  void value(std::span<const double> point, std::span<double> out) const;
  /// Row-major m x n.
  void jacobian(std::span<const double> point, std::span<double> out) const;

 private:
  int n_;
  int m_;
  std::vector<CompiledExpr> components_;
  std::vector<CompiledExpr> jacobian_;
  std::vector<bool> jacobian_zero_;
};

}  // namespace formcalc
