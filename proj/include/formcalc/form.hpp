#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "formcalc/scalar_expr.hpp"

namespace formcalc {

/// Strictly increasing list of axis indices; empty for scalar terms.
using MultiIndex = std::vector<int>;

struct Canonical {
  int sign = 0;  // -1, 0 (repeated index) or +1
  MultiIndex index;
};

/// Sort `indices` into increasing order. The sign is the parity of the sorting
/// permutation, or 0 when an index repeats (dx^i wedge dx^i = 0).
Canonical canonicalize(std::span<const int> indices);

/// Degree-k differential form sum_I f_I dx^I on R^n.
///
/// Terms are keyed by strictly increasing multi-indices and zero coefficients
/// are never stored, so two forms are equal exactly when their term maps are.
class DifferentialForm {
 public:
  DifferentialForm(int dimension, int degree);

  static DifferentialForm scalar(int dimension, const ScalarExpr& f);
  /// f dx^{i_1} ^ ... ^ dx^{i_k}; the indices may come in any order.
  static DifferentialForm monomial(int dimension, std::span<const int> indices, const ScalarExpr& f = ScalarExpr(1));
  static DifferentialForm differential(int dimension, int axis) {
    const int index[] = {axis};
    return monomial(dimension, index);
  }

  int dimension() const { return dimension_; }
  int degree() const { return degree_; }
  const std::map<MultiIndex, ScalarExpr>& terms() const { return terms_; }
  ScalarExpr coefficient(const MultiIndex& index) const;
  bool is_zero() const { return terms_.empty(); }

  /// Adds f to the coefficient of the (canonicalized) index.
  void accumulate(std::span<const int> indices, const ScalarExpr& f);

  /// Same grammar as parse_form, e.g. `(exp(x) - x)*dx/\dy`.
  std::string to_string(const std::vector<std::string>& names = {}) const;

  friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b);
  friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b);
  friend DifferentialForm operator-(const DifferentialForm& a);
  friend DifferentialForm operator*(const ScalarExpr& f, const DifferentialForm& a);
  friend DifferentialForm operator*(const DifferentialForm& a, const ScalarExpr& f) { return f * a; }
  friend bool operator==(const DifferentialForm& a, const DifferentialForm& b);

 private:
  int dimension_;
  int degree_;
  std::map<MultiIndex, ScalarExpr> terms_;
};

/// Symbolic vector field on R^n.
class VectorFieldSym {
 public:
  explicit VectorFieldSym(std::vector<ScalarExpr> components);
  VectorFieldSym(int dimension, std::vector<ScalarExpr> components);

  int dimension() const { return static_cast<int>(components_.size()); }
  const ScalarExpr& operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }
  const std::vector<ScalarExpr>& components() const { return components_; }

  /// Constant unit field e_axis.
  static VectorFieldSym unit(int dimension, int axis);

 private:
  std::vector<ScalarExpr> components_;
};

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm exterior_derivative(const DifferentialForm& a);
/// Contraction i_v a, degree k-1. Throws DimensionError for 0-forms.
DifferentialForm interior_product(const VectorFieldSym& v, const DifferentialForm& a);
/// Cartan combination d(i_v a) + i_v(d a). A 0-form gives v(f).
DifferentialForm lie_derivative(const VectorFieldSym& v, const DifferentialForm& a);

bool is_closed(const DifferentialForm& a);
bool equal(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm add(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm scale(const DifferentialForm& a, const ScalarExpr& f);

/// Vector-calculus bridge on R^3: v1 dx + v2 dy + v3 dz.
DifferentialForm omega1(const VectorFieldSym& v);
/// v1 dy^dz + v2 dz^dx + v3 dx^dy.
DifferentialForm omega2(const VectorFieldSym& v);

VectorFieldSym gradient(const ScalarExpr& f, int dimension);
VectorFieldSym curl(const VectorFieldSym& v);
ScalarExpr divergence(const VectorFieldSym& v);

/// dx^1 ^ ... ^ dx^n.
DifferentialForm volume_form(int dimension);

}  // namespace formcalc
