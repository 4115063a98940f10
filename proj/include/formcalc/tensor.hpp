#pragma once

#include <Eigen/Dense>
#include <array>
#include <map>
#include <span>
#include <vector>

#include "formcalc/form.hpp"

namespace formcalc {

/// Largest tensor degree accepted by the permutation-sum kernels.
inline constexpr int kMaxTensorDegree = 8;

/// Normalisation constant in a ^ b = C_{k,l} Alt(a (x) b).
enum class WedgeConvention {
  Determinant,       // C = (k+l)! / (k! l!), so phi^1 ^ ... ^ phi^n (e_1..e_n) = 1
  AltProduct,        // C = 1, so the same evaluation gives 1/n!
};

double wedge_constant(int k, int l, WedgeConvention convention = WedgeConvention::Determinant);

/// Dense k-tensor on R^n: one coefficient per ordered index (j_1..j_k), stored
/// row-major with j_1 most significant.
class GenericTensor {
 public:
  GenericTensor(int dimension, int degree);

  static GenericTensor scalar(int dimension, double value);
  /// phi^i, the i-th coordinate covector.
  static GenericTensor coordinate(int dimension, int axis);
  static GenericTensor covector(std::span<const double> components);
  /// Euclidean inner product as a 2-tensor.
  static GenericTensor inner_product(int dimension);
  /// det(v_1 .. v_n) as an n-tensor.
  static GenericTensor determinant(int dimension);

  int dimension() const { return dimension_; }
  int degree() const { return degree_; }
  double& operator[](std::span<const int> index);
  double operator[](std::span<const int> index) const;
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  /// Multilinear contraction sum_J t_J v_1^{j_1} ... v_k^{j_k}.
  double evaluate(std::span<const Eigen::VectorXd> vectors) const;

  bool is_alternating(double tol = 1e-12) const;

 private:
  std::size_t offset(std::span<const int> index) const;

  int dimension_;
  int degree_;
  std::vector<double> data_;
};

/// Alternating k-tensor sum_I c_I phi^I over increasing multi-indices, where
/// phi^I = phi^{i_1} ^ ... ^ phi^{i_k} in the Determinant convention.
class AltTensor {
 public:
  AltTensor(int dimension, int degree);

  static AltTensor basis(int dimension, const MultiIndex& index);
  static AltTensor covector(std::span<const double> components);
  /// Coefficients of a symbolic form at a point; phi^i is identified with dx^i.
  static AltTensor from_form(const DifferentialForm& form, std::span<const double> point);

  int dimension() const { return dimension_; }
  int degree() const { return degree_; }
  const std::map<MultiIndex, double>& coefficients() const { return coefficients_; }
  double coefficient(const MultiIndex& index) const;
  void set(const MultiIndex& index, double value);

  /// sum_I c_I det[v_r^{i_s}].
  double evaluate(std::span<const Eigen::VectorXd> vectors) const;

  GenericTensor expand() const;
  /// Reads c_I = t(e_{i_1}, ..., e_{i_k}); `t` must be alternating.
  static AltTensor compress(const GenericTensor& t);

 private:
  int dimension_;
  int degree_;
  std::map<MultiIndex, double> coefficients_;
};

GenericTensor tensor_product(const GenericTensor& a, const GenericTensor& b);
/// (1/k!) sum_sigma sign(sigma) t o sigma.
GenericTensor alt(const GenericTensor& t);
AltTensor wedge_alt(const AltTensor& a, const AltTensor& b, WedgeConvention convention = WedgeConvention::Determinant);

/// (L^* t)(v_1..v_k) = t(A v_1, .., A v_k) for A : R^n -> R^m (m x n).
GenericTensor pullback_linear(const Eigen::MatrixXd& a, const GenericTensor& t);
AltTensor pullback_linear(const Eigen::MatrixXd& a, const AltTensor& t);

struct WedgeDeterminant {
  double wedge;        // (alpha_1 ^ ... ^ alpha_k)(v_1, ..., v_k)
  double determinant;  // det[alpha_i(v_j)]
};

/// Rows of `covectors` are alpha_i, columns of `vectors` are v_j.
WedgeDeterminant covector_wedge_det(const Eigen::MatrixXd& covectors, const Eigen::MatrixXd& vectors);

/// phi^1 ^ phi^2, phi^1 ^ phi^3, phi^2 ^ phi^3 on R^3: the signed areas of the
/// projections of a parallelogram onto the xy, xz and yz planes.
std::array<AltTensor, 3> projection_areas_decomposition();

/// n choose k.
long alt_dimension(int dimension, int degree);

}  // namespace formcalc
