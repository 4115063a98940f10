#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "formcalc/form.hpp"
#include "formcalc/smooth_map.hpp"

namespace formcalc {

struct Interval {
  double lo;
  double hi;
};

/// Gauss-Legendre tensor-product rule with `points` nodes per axis.
struct QuadratureSpec {
  int points = 16;
  /// Equal panels per axis, each carrying its own rule.
  int panels = 1;

  void validate() const;
};

/// Nodes and weights of the q-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int points);

/// Nodes and weights along one interval, panel by panel.
GaussLegendre quadrature_axis(const Interval& interval, const QuadratureSpec& spec);

/// Tensor-product quadrature of fn over a box, nodes summed in lexicographic
/// order. A DomainError raised by fn is rethrown naming the node.
double integrate_box(const std::vector<Interval>& box, const QuadratureSpec& spec,
                     const std::function<double(std::span<const double>)>& fn);

/// Oriented parametrized k-cell psi : box -> R^N. Faces are represented by
/// freezing parameters of the underlying map, so every face of a cell is again
/// a cell of the same map.
class Cell {
 public:
  Cell(std::vector<Interval> box, SmoothMap map, int orientation = 1);

  int dimension() const { return static_cast<int>(box_.size()); }
  int ambient() const { return compiled_->codomain_dimension(); }
  int orientation() const { return orientation_; }
  const std::vector<Interval>& box() const { return box_; }
  const SmoothMap& map() const { return *map_; }

  /// Free parameters -> full parameter vector of the underlying map.
  std::vector<double> parameters(std::span<const double> u) const;
  std::vector<double> point(std::span<const double> u) const;
  /// N x k matrix of partial derivatives along the free parameters.
  Eigen::MatrixXd tangents(std::span<const double> u) const;

  /// The face where free parameter `axis` is frozen at its upper or lower bound.
  Cell face(int axis, bool upper) const;
  Cell with_orientation(int orientation) const;
  /// f o psi with the same box.
  Cell mapped(const SmoothMap& f) const;

  /// Underlying map with frozen parameters substituted.
  SmoothMap restricted_map() const;

 private:
  Cell() = default;

  std::vector<Interval> box_;
  std::shared_ptr<const SmoothMap> map_;
  std::shared_ptr<const CompiledMap> compiled_;
  std::vector<int> free_axes_;
  std::vector<double> frozen_;
  int orientation_ = 1;
};

struct ChainTerm {
  int weight;
  Cell cell;
};

class Chain {
 public:
  Chain() = default;
  explicit Chain(std::vector<ChainTerm> terms);

  void add(int weight, Cell cell);
  const std::vector<ChainTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// -1 for an empty chain.
  int dimension() const;
  int ambient() const;

 private:
  std::vector<ChainTerm> terms_;
};

struct SignedPoint {
  int sign;
  std::vector<double> point;
};
using PointChain = std::vector<SignedPoint>;

double integrate_cell(const DifferentialForm& a, const Cell& c, const QuadratureSpec& spec = {});
double integrate_chain(const DifferentialForm& a, const Chain& chain, const QuadratureSpec& spec = {});
double integrate_points(const DifferentialForm& f, const PointChain& points);

/// Quadrature of the symbolic pullback coefficient of `a` through the cell map.
/// Slower than integrate_cell, which evaluates the same pullback pointwise.
double integrate_cell_symbolic(const DifferentialForm& a, const Cell& c, const QuadratureSpec& spec = {});

/// Outward-normal-first boundary: the face x_j = b_j has sign (-1)^(j-1), the
/// face x_j = a_j has sign (-1)^j (j counted from 1), times the orientation.
/// The boundary of a 1-cell is a chain of 0-cells.
Chain boundary(const Cell& c);
Chain boundary(const Chain& chain);
/// Points of a chain of 0-cells.
PointChain as_points(const Chain& chain);

struct StokesResult {
  double lhs;  // integral of dw over the chain
  double rhs;  // integral of w over the boundary
  double residual;
};

StokesResult stokes_check(const DifferentialForm& w, const Cell& c, const QuadratureSpec& spec = {});
StokesResult stokes_check(const DifferentialForm& w, const Chain& chain, const QuadratureSpec& spec = {});

struct HemisphereTransfer {
  double hemisphere;  // integral over the upper unit hemisphere, outward normal
  double disk;        // integral over the equatorial disk, upward normal
  double ball;        // integral of dw over the upper half-ball
  double residual;    // |hemisphere - disk - ball|
};

/// Compares the flux of a 2-form through the upper hemisphere with its flux
/// through the equatorial disk plus the integral of dw over the half-ball.
HemisphereTransfer hemisphere_transfer_check(const DifferentialForm& w, const QuadratureSpec& spec = {});

/// Standard parametrized cells.
Cell unit_circle_cell();                 // theta in [0, 2pi]
Cell sphere_cell(double radius = 1.0);   // (phi, theta) in [0, pi] x [0, 2pi], outward
Cell disk_cell(double radius = 1.0);     // (r, theta) in [0, radius] x [0, 2pi]
Cell interval_cell(double lo, double hi);

}  // namespace formcalc
