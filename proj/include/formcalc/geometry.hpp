#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>

#include "formcalc/form.hpp"
#include "formcalc/integration.hpp"

namespace formcalc {

/// Closed parametrized curve: a 1-cell whose endpoints map to the same point.
class Loop {
 public:
  explicit Loop(Cell cell);

  const Cell& cell() const { return cell_; }
  int ambient() const { return cell_.ambient(); }
  Loop reversed() const;

 private:
  Cell cell_;
};

/// A quadrature value that should be an integer, with its nearest integer.
struct IntegerEstimate {
  double value;
  long rounded;

  double gap() const;
};

IntegerEstimate make_estimate(double value);

/// (x dy - y dx) / (x^2 + y^2) on R^2 minus the origin.
DifferentialForm angular_form();
/// (x dy^dz - y dx^dz + z dx^dy) / (x^2 + y^2 + z^2)^(3/2) on R^3 minus the origin.
DifferentialForm solid_angle_form();

/// (1 / 2pi) times the integral of the angular form over the loop.
IntegerEstimate winding_number(const Loop& loop, const QuadratureSpec& spec = {16, 4});

/// Integral over boundary(chain) of a fixed polynomial test form; close to 0
/// for chains without boundary.
double closure_defect(const Chain& chain, const QuadratureSpec& spec = {});

struct NonexactnessCertificate {
  double integral;
  bool not_exact;
  std::string verdict;  // "not exact on this domain" or "inconclusive"
};

/// A closed form with a nonzero period over a closed chain cannot be exact.
/// Throws DomainError if the form is not closed or the chain has a boundary.
NonexactnessCertificate nonexactness_certificate(const DifferentialForm& a, const Chain& chain,
                                                 const QuadratureSpec& spec = {}, double tol = 1e-6);

/// Ratio of the integral of f^* a over the domain chain to the integral of a
/// over the codomain chain.
IntegerEstimate degree_by_integration(const SmoothMap& f, const Chain& domain, const Chain& codomain,
                                      const DifferentialForm& a, const QuadratureSpec& spec = {});

/// Unit normal n with (n, x_u, x_v) positively oriented, times the cell orientation.
Eigen::Vector3d gauss_map(const Cell& surface, std::span<const double> u);
/// Matrix of dn in the tangent frame (x_u, x_v), from central differences of n.
Eigen::Matrix2d shape_operator(const Cell& surface, std::span<const double> u);
double gauss_curvature(const Cell& surface, std::span<const double> u);

struct GaussBonnetResult {
  double integral;  // integral of K dA
  double expected;  // 2 pi chi
  double residual;
};

GaussBonnetResult gauss_bonnet_check(const Chain& surface, int euler_characteristic, const QuadratureSpec& spec = {});

/// Integral over the surface of the Gauss-map pullback of the area form of S^2.
double gauss_map_pullback_integral(const Chain& surface, const QuadratureSpec& spec = {});

/// The (n-1)-form i_n dV on an oriented surface in R^3.
class HypersurfaceVolumeForm {
 public:
  explicit HypersurfaceVolumeForm(Cell surface);

  /// dV(n, v1, v2) at parameter u.
  double operator()(std::span<const double> u, const Eigen::Vector3d& v1, const Eigen::Vector3d& v2) const;
  /// Integral of the form over the surface: its area.
  double integrate(const QuadratureSpec& spec = {}) const;

 private:
  Cell surface_;
};

/// Gauss linking integrand (g1 - g2) . (g1' x g2') / |g1 - g2|^3 at parameters (s, t).
double linking_density(const Loop& a, const Loop& b, double s, double t);

/// F(s, t) = (g2(t) - g1(s)) / |g2(t) - g1(s)| as a symbolic map R^2 -> S^2.
SmoothMap linking_map(const Loop& a, const Loop& b);

/// (1 / 4pi) times the integral of F^* omega_2 over the parameter torus. Throws
/// DomainError when the loops come within 1e-3 times their size of each other.
IntegerEstimate linking_number(const Loop& a, const Loop& b, const QuadratureSpec& spec = {16, 2});

/// Standard surfaces.
Cell torus_cell(double major = 2.0, double minor = 1.0);
Cell ellipsoid_cell(double a, double b, double c);

}  // namespace formcalc
