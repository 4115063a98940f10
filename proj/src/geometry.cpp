#include "formcalc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "formcalc/error.hpp"
#include "formcalc/tensor.hpp"

namespace formcalc {

namespace {

constexpr double kPi = std::numbers::pi;

double loop_scale(const Loop& loop, const GaussLegendre& nodes, std::vector<Eigen::Vector3d>& points) {
  Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
  Eigen::Vector3d hi = -lo;
  for (double s : nodes.nodes) {
    const double u[] = {s};
    const std::vector<double> p = loop.cell().point(u);
    const Eigen::Vector3d v(p[0], p[1], p[2]);
    points.push_back(v);
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return (hi - lo).norm();
}

Eigen::Vector3d cross_normal(const Cell& surface, std::span<const double> u) {
  const Eigen::MatrixXd t = surface.tangents(u);
  const Eigen::Vector3d xu = t.col(0);
  const Eigen::Vector3d xv = t.col(1);
  return xu.cross(xv);
}

void check_surface(const Cell& surface) {
  if (surface.dimension() != 2 || surface.ambient() != 3) throw DimensionError("surface cells must map R^2 into R^3");
}

}  // namespace

Loop::Loop(Cell cell) : cell_(std::move(cell)) {
  if (cell_.dimension() != 1) throw DimensionError("a loop is a 1-cell");
  const double lo[] = {cell_.box()[0].lo};
  const double hi[] = {cell_.box()[0].hi};
  const std::vector<double> a = cell_.point(lo);
  const std::vector<double> b = cell_.point(hi);
  double gap = 0, size = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    gap = std::max(gap, std::abs(a[i] - b[i]));
    size = std::max(size, std::abs(a[i]));
  }
  if (gap > 1e-12 * size) throw DomainError("loop endpoints differ by " + std::to_string(gap));
}

Loop Loop::reversed() const { return Loop(cell_.with_orientation(-cell_.orientation())); }

double IntegerEstimate::gap() const { return std::abs(value - static_cast<double>(rounded)); }

IntegerEstimate make_estimate(double value) { return {value, std::lround(value)}; }

DifferentialForm angular_form() {
  const ScalarExpr x = ScalarExpr::variable(0), y = ScalarExpr::variable(1);
  const ScalarExpr r2 = x * x + y * y;
  DifferentialForm a(2, 1);
  a.accumulate(std::vector<int>{1}, x / r2);
  a.accumulate(std::vector<int>{0}, -y / r2);
  return a;
}

DifferentialForm solid_angle_form() {
  const ScalarExpr x = ScalarExpr::variable(0), y = ScalarExpr::variable(1), z = ScalarExpr::variable(2);
  const ScalarExpr r2 = x * x + y * y + z * z;
  const ScalarExpr inv = ScalarExpr(1) / (r2 * sqrt(r2));
  DifferentialForm a(3, 2);
  a.accumulate(std::vector<int>{1, 2}, x * inv);
  a.accumulate(std::vector<int>{0, 2}, -y * inv);
  a.accumulate(std::vector<int>{0, 1}, z * inv);
  return a;
}

IntegerEstimate winding_number(const Loop& loop, const QuadratureSpec& spec) {
  if (loop.ambient() != 2) throw DimensionError("winding number needs a loop in R^2");
  const GaussLegendre nodes = quadrature_axis(loop.cell().box()[0], spec);
  double size = 0;
  for (double s : nodes.nodes) {
    const double u[] = {s};
    const std::vector<double> p = loop.cell().point(u);
    size = std::max(size, std::hypot(p[0], p[1]));
  }
  for (double s : nodes.nodes) {
    const double u[] = {s};
    const std::vector<double> p = loop.cell().point(u);
    if (std::hypot(p[0], p[1]) <= 1e-9 * std::max(size, 1.0)) {
      throw DomainError("loop passes through the origin near parameter " + std::to_string(s));
    }
  }
  return make_estimate(integrate_cell(angular_form(), loop.cell(), spec) / (2 * kPi));
}

double closure_defect(const Chain& chain, const QuadratureSpec& spec) {
  if (chain.empty() || chain.dimension() < 1) return 0.0;
  const int n = chain.ambient();
  const int k = chain.dimension() - 1;
  DifferentialForm test(n, k);
  std::vector<int> index(static_cast<std::size_t>(k));
  // every increasing multi-index of length k, with a deterministic polynomial coefficient
  std::function<void(int, int, int)> fill = [&](int pos, int start, int salt) {
    if (pos == k) {
      ScalarExpr f(1);
      for (int j = 0; j < n; ++j) f += ScalarExpr((j + 2 + salt) % 5 - 2) * ScalarExpr::variable(j);
      f += ScalarExpr::variable(0) * ScalarExpr::variable(n - 1);
      // plus x_m for the first axis m outside the index, signed so that d(x_m dx_I) is positive
      int m = 0;
      while (m < n && std::find(index.begin(), index.end(), m) != index.end()) ++m;
      if (m < n) f += ScalarExpr(m % 2 ? -1 : 1) * ScalarExpr::variable(m);
      test.accumulate(index, f);
      return;
    }
    for (int i = start; i < n; ++i) {
      index[static_cast<std::size_t>(pos)] = i;
      fill(pos + 1, i + 1, salt + i + 1);
    }
  };
  fill(0, 0, 0);
  return std::abs(integrate_chain(test, boundary(chain), spec));
}

NonexactnessCertificate nonexactness_certificate(const DifferentialForm& a, const Chain& chain,
                                                 const QuadratureSpec& spec, double tol) {
  if (!is_closed(a)) throw DomainError("form is not closed");
  if (chain.dimension() != a.degree()) throw DimensionError("chain dimension differs from the form degree");
  const double defect = closure_defect(chain, spec);
  if (defect > 1e-8) throw DomainError("chain has a boundary (test-form defect " + std::to_string(defect) + ")");
  NonexactnessCertificate c;
  c.integral = integrate_chain(a, chain, spec);
  c.not_exact = std::abs(c.integral) > tol;
  c.verdict = c.not_exact ? "not exact on this domain" : "inconclusive";
  return c;
}

IntegerEstimate degree_by_integration(const SmoothMap& f, const Chain& domain, const Chain& codomain,
                                      const DifferentialForm& a, const QuadratureSpec& spec) {
  if (domain.dimension() != codomain.dimension()) throw DimensionError("domain and codomain chains differ in dimension");
  const double bottom = integrate_chain(a, codomain, spec);
  if (std::abs(bottom) < 1e-12) throw DomainError("test form integrates to zero over the codomain");
  Chain pushed;
  for (const auto& t : domain.terms()) pushed.add(t.weight, t.cell.mapped(f));
  return make_estimate(integrate_chain(a, pushed, spec) / bottom);
}

Eigen::Vector3d gauss_map(const Cell& surface, std::span<const double> u) {
  check_surface(surface);
  const Eigen::Vector3d n = cross_normal(surface, u);
  const double len = n.norm();
  double scale = 1;
  for (double c : surface.point(u)) scale = std::max(scale, std::abs(c));
  if (len <= 1e-12 * scale * scale) throw DomainError("surface map is not an immersion at this parameter");
  return surface.orientation() * n / len;
}

Eigen::Matrix2d shape_operator(const Cell& surface, std::span<const double> u) {
  check_surface(surface);
  constexpr double h = 1e-5;
  const Eigen::Vector3d n = gauss_map(surface, u);
  const Eigen::MatrixXd t = surface.tangents(u);
  Eigen::Matrix<double, 3, 2> dn;
  for (int i = 0; i < 2; ++i) {
    double plus[] = {u[0], u[1]};
    double minus[] = {u[0], u[1]};
    plus[i] += h;
    minus[i] -= h;
    Eigen::Vector3d d = (gauss_map(surface, plus) - gauss_map(surface, minus)) / (2 * h);
    d -= d.dot(n) * n;
    dn.col(i) = d;
  }
  // dn(x_i) = sum_l S_li x_l, so (x_j . dn_i) = (S^T G)_ij
  const Eigen::Matrix2d g = t.transpose() * t;
  const Eigen::Matrix2d m = dn.transpose() * t;
  return g.inverse() * m.transpose();
}

double gauss_curvature(const Cell& surface, std::span<const double> u) { return shape_operator(surface, u).determinant(); }

GaussBonnetResult gauss_bonnet_check(const Chain& surface, int euler_characteristic, const QuadratureSpec& spec) {
  GaussBonnetResult r{0.0, 2 * kPi * euler_characteristic, 0.0};
  for (const auto& term : surface.terms()) {
    check_surface(term.cell);
    r.integral += term.weight * integrate_box(term.cell.box(), spec, [&](std::span<const double> u) {
      return gauss_curvature(term.cell, u) * cross_normal(term.cell, u).norm();
    });
  }
  r.residual = std::abs(r.integral - r.expected);
  return r;
}

double gauss_map_pullback_integral(const Chain& surface, const QuadratureSpec& spec) {
  constexpr double h = 1e-5;
  double total = 0;
  for (const auto& term : surface.terms()) {
    check_surface(term.cell);
    // n^* omega_2 (d_u, d_v) = n . (n_u x n_v)
    total += term.weight * term.cell.orientation() * integrate_box(term.cell.box(), spec, [&](std::span<const double> u) {
               const Eigen::Vector3d n = gauss_map(term.cell, u);
               Eigen::Vector3d d[2];
               for (int i = 0; i < 2; ++i) {
                 double plus[] = {u[0], u[1]};
                 double minus[] = {u[0], u[1]};
                 plus[i] += h;
                 minus[i] -= h;
                 d[i] = (gauss_map(term.cell, plus) - gauss_map(term.cell, minus)) / (2 * h);
               }
               return n.dot(d[0].cross(d[1]));
             });
  }
  return total;
}

HypersurfaceVolumeForm::HypersurfaceVolumeForm(Cell surface) : surface_(std::move(surface)) { check_surface(surface_); }

double HypersurfaceVolumeForm::operator()(std::span<const double> u, const Eigen::Vector3d& v1,
                                          const Eigen::Vector3d& v2) const {
  static const AltTensor volume = AltTensor::basis(3, {0, 1, 2});
  const Eigen::VectorXd vectors[] = {gauss_map(surface_, u), v1, v2};
  return volume.evaluate(vectors);
}

double HypersurfaceVolumeForm::integrate(const QuadratureSpec& spec) const {
  return surface_.orientation() * integrate_box(surface_.box(), spec, [&](std::span<const double> u) {
           const Eigen::MatrixXd t = surface_.tangents(u);
           return (*this)(u, t.col(0), t.col(1));
         });
}

double linking_density(const Loop& a, const Loop& b, double s, double t) {
  const double us[] = {s};
  const double ut[] = {t};
  const std::vector<double> p = a.cell().point(us);
  const std::vector<double> q = b.cell().point(ut);
  const Eigen::Vector3d d(p[0] - q[0], p[1] - q[1], p[2] - q[2]);
  const Eigen::Vector3d ta = a.cell().tangents(us).col(0);
  const Eigen::Vector3d tb = b.cell().tangents(ut).col(0);
  const double r = d.norm();
  return d.dot(ta.cross(tb)) / (r * r * r);
}

SmoothMap linking_map(const Loop& a, const Loop& b) {
  if (a.ambient() != 3 || b.ambient() != 3) throw DimensionError("linking needs loops in R^3");
  const SmoothMap ga = a.cell().restricted_map();
  const SmoothMap gb = b.cell().restricted_map();
  const ScalarExpr t = ScalarExpr::variable(1);
  std::vector<ScalarExpr> diff;
  ScalarExpr norm2;
  for (int i = 0; i < 3; ++i) {
    const ScalarExpr shifted = substitute(gb[i], std::vector<ScalarExpr>{t});
    diff.push_back(shifted - ga[i]);
    norm2 += diff.back() * diff.back();
  }
  const ScalarExpr inv = ScalarExpr(1) / sqrt(norm2);
  std::vector<ScalarExpr> components;
  for (const auto& d : diff) components.push_back(d * inv);
  return SmoothMap(2, std::move(components));
}

IntegerEstimate linking_number(const Loop& a, const Loop& b, const QuadratureSpec& spec) {
  if (a.ambient() != 3 || b.ambient() != 3) throw DimensionError("linking needs loops in R^3");
  const GaussLegendre na = quadrature_axis(a.cell().box()[0], spec);
  const GaussLegendre nb = quadrature_axis(b.cell().box()[0], spec);
  std::vector<Eigen::Vector3d> pa, pb, ta, tb;
  const double scale = std::max(loop_scale(a, na, pa), loop_scale(b, nb, pb));
  for (double s : na.nodes) {
    const double u[] = {s};
    ta.push_back(a.cell().tangents(u).col(0));
  }
  for (double s : nb.nodes) {
    const double u[] = {s};
    tb.push_back(b.cell().tangents(u).col(0));
  }
  double sum = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    double row = 0;
    for (std::size_t j = 0; j < pb.size(); ++j) {
      const Eigen::Vector3d d = pa[i] - pb[j];
      const double r = d.norm();
      if (r < 1e-3 * scale) throw DomainError("loops come within " + std::to_string(r) + " of each other");
      row += nb.weights[j] * d.dot(ta[i].cross(tb[j])) / (r * r * r);
    }
    sum += na.weights[i] * row;
  }
  return make_estimate(a.cell().orientation() * b.cell().orientation() * sum / (4 * kPi));
}

Cell torus_cell(double major, double minor) {
  const ScalarExpr u = ScalarExpr::variable(0), v = ScalarExpr::variable(1);
  const ScalarExpr big{Rational(major)}, small{Rational(minor)};
  const ScalarExpr ring = big + small * cos(v);
  return Cell({{0, 2 * kPi}, {0, 2 * kPi}}, SmoothMap(2, {ring * cos(u), ring * sin(u), small * sin(v)}));
}

Cell ellipsoid_cell(double a, double b, double c) {
  const ScalarExpr phi = ScalarExpr::variable(0), theta = ScalarExpr::variable(1);
  return Cell({{0, kPi}, {0, 2 * kPi}},
              SmoothMap(2, {ScalarExpr(Rational(a)) * sin(phi) * cos(theta), ScalarExpr(Rational(b)) * sin(phi) * sin(theta),
                            ScalarExpr(Rational(c)) * cos(phi)}));
}

}  // namespace formcalc
