#include "formcalc/integration.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "formcalc/error.hpp"
#include "formcalc/parser.hpp"

namespace formcalc {

void QuadratureSpec::validate() const {
  if (points < 2 || points > 64) throw DimensionError("quadrature points per axis must be in 2..64, got " + std::to_string(points));
  if (panels < 1 || panels > 256) throw DimensionError("quadrature panels per axis must be in 1..256, got " + std::to_string(panels));
}

namespace {

GaussLegendre compute_rule(int q) {
  GaussLegendre rule;
  rule.nodes.resize(static_cast<std::size_t>(q));
  rule.weights.resize(static_cast<std::size_t>(q));
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = 0;
      for (int j = 1; j <= q; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = q * (z * p0 - p1) / (z * z - 1);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute the derivative at the converged root
    double p0 = 1, p1 = 0;
    for (int j = 1; j <= q; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = q * (z * p0 - p1) / (z * z - 1);
    const double w = 2.0 / ((1 - z * z) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -z;
    rule.nodes[static_cast<std::size_t>(q - 1 - i)] = z;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(q - 1 - i)] = w;
  }
  return rule;
}

}  // namespace

GaussLegendre quadrature_axis(const Interval& iv, const QuadratureSpec& spec) {
  spec.validate();
  const GaussLegendre& gl = gauss_legendre(spec.points);
  GaussLegendre out;
  const double h = (iv.hi - iv.lo) / spec.panels;
  for (int p = 0; p < spec.panels; ++p) {
    const double lo = iv.lo + p * h;
    const double mid = lo + h / 2;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      out.nodes.push_back(mid + h / 2 * gl.nodes[i]);
      out.weights.push_back(h / 2 * gl.weights[i]);
    }
  }
  return out;
}

namespace {

std::string format_point(std::span<const double> u) {
  std::ostringstream os;
  os.precision(12);
  os << "(";
  for (std::size_t i = 0; i < u.size(); ++i) os << (i ? ", " : "") << u[i];
  os << ")";
  return os.str();
}

// Sums fn(u) * weight over the tensor-product rule in lexicographic node order.
template <typename Fn>
double quadrature(const std::vector<Interval>& box, const QuadratureSpec& spec, Fn&& fn) {
  spec.validate();
  const std::size_t k = box.size();
  std::vector<double> u(k);
  if (k == 0) return fn(std::span<const double>(u));
  std::vector<GaussLegendre> rules;
  for (const auto& iv : box) rules.push_back(quadrature_axis(iv, spec));
  std::vector<std::size_t> idx(k, 0);
  const std::size_t m = rules[0].nodes.size();
  double sum = 0;
  while (true) {
    double w = 1;
    for (std::size_t a = 0; a < k; ++a) {
      u[a] = rules[a].nodes[idx[a]];
      w *= rules[a].weights[idx[a]];
    }
    double value;
    try {
      value = fn(std::span<const double>(u));
    } catch (const DomainError& e) {
      throw DomainError(std::string("singular evaluation at parameter ") + format_point(u) + ": " + e.what());
    }
    sum += w * value;
    std::size_t pos = k;
    while (pos > 0 && ++idx[pos - 1] == m) {
      idx[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return sum;
}

void check_degree(const DifferentialForm& a, int k, int ambient) {
  if (a.degree() != k) {
    throw DimensionError("cannot integrate a " + std::to_string(a.degree()) + "-form over a " + std::to_string(k) + "-cell");
  }
  if (a.dimension() != ambient) {
    throw DimensionError("form lives on R^" + std::to_string(a.dimension()) + " but the cell lands in R^" +
                         std::to_string(ambient));
  }
}

}  // namespace

const GaussLegendre& gauss_legendre(int points) {
  static const std::array<GaussLegendre, 65> rules = [] {
    std::array<GaussLegendre, 65> r;
    for (int q = 2; q <= 64; ++q) r[static_cast<std::size_t>(q)] = compute_rule(q);
    return r;
  }();
  if (points < 2 || points > 64) throw DimensionError("Gauss-Legendre rule needs 2..64 points");
  return rules[static_cast<std::size_t>(points)];
}

double integrate_box(const std::vector<Interval>& box, const QuadratureSpec& spec,
                     const std::function<double(std::span<const double>)>& fn) {
  return quadrature(box, spec, fn);
}

// ---------------------------------------------------------------------------

Cell::Cell(std::vector<Interval> box, SmoothMap map, int orientation)
    : box_(std::move(box)), orientation_(orientation) {
  if (static_cast<int>(box_.size()) != map.domain_dimension()) {
    throw DimensionError("cell box has " + std::to_string(box_.size()) + " intervals but the map takes " +
                         std::to_string(map.domain_dimension()) + " parameters");
  }
  for (const auto& iv : box_) {
    if (!(iv.lo < iv.hi)) throw DimensionError("cell box interval must satisfy a < b");
  }
  if (orientation != 1 && orientation != -1) throw DimensionError("cell orientation must be +1 or -1");
  for (int i = 0; i < map.domain_dimension(); ++i) free_axes_.push_back(i);
  frozen_.assign(static_cast<std::size_t>(map.domain_dimension()), 0.0);
  compiled_ = std::make_shared<CompiledMap>(map);
  map_ = std::make_shared<SmoothMap>(std::move(map));
}

std::vector<double> Cell::parameters(std::span<const double> u) const {
  if (u.size() != box_.size()) throw DimensionError("cell evaluated with wrong number of parameters");
  std::vector<double> full = frozen_;
  for (std::size_t i = 0; i < free_axes_.size(); ++i) full[static_cast<std::size_t>(free_axes_[i])] = u[i];
  return full;
}

std::vector<double> Cell::point(std::span<const double> u) const {
  const std::vector<double> p = parameters(u);
  std::vector<double> x(static_cast<std::size_t>(ambient()));
  compiled_->value(p, x);
  return x;
}

Eigen::MatrixXd Cell::tangents(std::span<const double> u) const {
  const std::vector<double> p = parameters(u);
  const int n = ambient();
  const int full = compiled_->domain_dimension();
  std::vector<double> jac(static_cast<std::size_t>(n * full));
  compiled_->jacobian(p, jac);
  Eigen::MatrixXd t(n, dimension());
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < dimension(); ++c) t(r, c) = jac[static_cast<std::size_t>(r * full + free_axes_[static_cast<std::size_t>(c)])];
  }
  return t;
}

Cell Cell::face(int axis, bool upper) const {
  if (axis < 0 || axis >= dimension()) throw DimensionError("face axis out of range");
  Cell f = *this;
  const auto a = static_cast<std::size_t>(axis);
  f.frozen_[static_cast<std::size_t>(free_axes_[a])] = upper ? box_[a].hi : box_[a].lo;
  f.free_axes_.erase(f.free_axes_.begin() + axis);
  f.box_.erase(f.box_.begin() + axis);
  f.orientation_ = 1;
  return f;
}

Cell Cell::with_orientation(int orientation) const {
  if (orientation != 1 && orientation != -1) throw DimensionError("cell orientation must be +1 or -1");
  Cell c = *this;
  c.orientation_ = orientation;
  return c;
}

Cell Cell::mapped(const SmoothMap& f) const {
  Cell c = *this;
  SmoothMap composed = compose(f, *map_);
  c.compiled_ = std::make_shared<CompiledMap>(composed);
  c.map_ = std::make_shared<SmoothMap>(std::move(composed));
  return c;
}

SmoothMap Cell::restricted_map() const {
  std::vector<ScalarExpr> replacements;
  for (std::size_t j = 0; j < frozen_.size(); ++j) replacements.emplace_back(Rational(frozen_[j]));
  for (std::size_t i = 0; i < free_axes_.size(); ++i) {
    replacements[static_cast<std::size_t>(free_axes_[i])] = ScalarExpr::variable(static_cast<int>(i));
  }
  std::vector<ScalarExpr> components;
  for (const auto& c : map_->components()) components.push_back(substitute(c, replacements));
  return SmoothMap(dimension(), std::move(components));
}

// ---------------------------------------------------------------------------

Chain::Chain(std::vector<ChainTerm> terms) {
  for (auto& t : terms) add(t.weight, std::move(t.cell));
}

void Chain::add(int weight, Cell cell) {
  if (!terms_.empty() && (cell.dimension() != dimension() || cell.ambient() != ambient())) {
    throw DimensionError("chain cells must share parameter dimension and ambient dimension");
  }
  terms_.push_back({weight, std::move(cell)});
}

int Chain::dimension() const { return terms_.empty() ? -1 : terms_.front().cell.dimension(); }

int Chain::ambient() const { return terms_.empty() ? -1 : terms_.front().cell.ambient(); }

// ---------------------------------------------------------------------------

double integrate_cell(const DifferentialForm& a, const Cell& c, const QuadratureSpec& spec) {
  const int k = c.dimension();
  check_degree(a, k, c.ambient());
  spec.validate();
  if (a.is_zero()) return 0.0;
  std::vector<std::pair<MultiIndex, CompiledExpr>> terms;
  for (const auto& [index, f] : a.terms()) terms.emplace_back(index, CompiledExpr(f));
  Eigen::MatrixXd minor(k, k);
  const double total = quadrature(c.box(), spec, [&](std::span<const double> u) {
    const std::vector<double> x = c.point(u);
    if (k == 0) return terms.front().second(x);
    const Eigen::MatrixXd t = c.tangents(u);
    double value = 0;
    for (const auto& [index, f] : terms) {
      for (int r = 0; r < k; ++r) minor.row(r) = t.row(index[static_cast<std::size_t>(r)]);
      const double det = minor.determinant();
      if (det != 0) value += f(x) * det;
    }
    return value;
  });
  return c.orientation() * total;
}

double integrate_cell_symbolic(const DifferentialForm& a, const Cell& c, const QuadratureSpec& spec) {
  check_degree(a, c.dimension(), c.ambient());
  const DifferentialForm pulled = pullback_form(c.restricted_map(), a);
  MultiIndex top;
  for (int i = 0; i < c.dimension(); ++i) top.push_back(i);
  const CompiledExpr f(pulled.coefficient(top));
  return c.orientation() * quadrature(c.box(), spec, [&](std::span<const double> u) { return f(u); });
}

double integrate_chain(const DifferentialForm& a, const Chain& chain, const QuadratureSpec& spec) {
  double sum = 0;
  for (const auto& t : chain.terms()) {
    if (t.weight == 0) continue;
    sum += t.weight * integrate_cell(a, t.cell, spec);
  }
  return sum;
}

double integrate_points(const DifferentialForm& f, const PointChain& points) {
  if (f.degree() != 0) throw DimensionError("only 0-forms can be integrated over points");
  const ScalarExpr& g = f.coefficient({});
  double sum = 0;
  for (const auto& p : points) {
    if (static_cast<int>(p.point.size()) != f.dimension()) throw DimensionError("point of wrong dimension");
    sum += p.sign * evaluate(g, p.point);
  }
  return sum;
}

Chain boundary(const Cell& c) {
  const int k = c.dimension();
  if (k < 1) throw DimensionError("boundary of a 0-cell");
  Chain out;
  for (int j = 0; j < k; ++j) {
    const int upper_sign = (j % 2 == 0) ? 1 : -1;
    out.add(upper_sign * c.orientation(), c.face(j, true));
    out.add(-upper_sign * c.orientation(), c.face(j, false));
  }
  return out;
}

Chain boundary(const Chain& chain) {
  Chain out;
  for (const auto& t : chain.terms()) {
    const Chain faces = boundary(t.cell);
    for (const auto& f : faces.terms()) out.add(t.weight * f.weight, f.cell);
  }
  return out;
}

PointChain as_points(const Chain& chain) {
  PointChain out;
  for (const auto& t : chain.terms()) {
    if (t.cell.dimension() != 0) throw DimensionError("as_points needs a chain of 0-cells");
    out.push_back({t.weight * t.cell.orientation(), t.cell.point({})});
  }
  return out;
}

StokesResult stokes_check(const DifferentialForm& w, const Chain& chain, const QuadratureSpec& spec) {
  if (w.degree() != chain.dimension() - 1) {
    throw DimensionError("Stokes check needs a " + std::to_string(chain.dimension() - 1) + "-form, got degree " +
                         std::to_string(w.degree()));
  }
  StokesResult r;
  r.lhs = integrate_chain(exterior_derivative(w), chain, spec);
  r.rhs = integrate_chain(w, boundary(chain), spec);
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

StokesResult stokes_check(const DifferentialForm& w, const Cell& c, const QuadratureSpec& spec) {
  return stokes_check(w, Chain({{1, c}}), spec);
}

HemisphereTransfer hemisphere_transfer_check(const DifferentialForm& w, const QuadratureSpec& spec) {
  if (w.dimension() != 3 || w.degree() != 2) throw DimensionError("hemisphere transfer needs a 2-form on R^3");
  constexpr double pi = std::numbers::pi;
  const Cell hemisphere({{0, pi / 2}, {0, 2 * pi}},
                        parse_map("map(phi,theta) = sin(phi)*cos(theta); sin(phi)*sin(theta); cos(phi)"));
  const Cell disk({{0, 1}, {0, 2 * pi}}, parse_map("map(r,theta) = r*cos(theta); r*sin(theta); 0"));
  const Cell ball({{0, 1}, {0, pi / 2}, {0, 2 * pi}},
                  parse_map("map(rho,phi,theta) = rho*sin(phi)*cos(theta); rho*sin(phi)*sin(theta); rho*cos(phi)"));
  HemisphereTransfer r;
  r.hemisphere = integrate_cell(w, hemisphere, spec);
  r.disk = integrate_cell(w, disk, spec);
  r.ball = integrate_cell(exterior_derivative(w), ball, spec);
  r.residual = std::abs(r.hemisphere - r.disk - r.ball);
  return r;
}

Cell unit_circle_cell() {
  return Cell({{0, 2 * std::numbers::pi}}, parse_map("map(theta) = cos(theta); sin(theta)"));
}

Cell sphere_cell(double radius) {
  const Rational r(radius);
  const SmoothMap unit = parse_map("map(phi,theta) = sin(phi)*cos(theta); sin(phi)*sin(theta); cos(phi)");
  std::vector<ScalarExpr> c;
  for (const auto& e : unit.components()) c.push_back(ScalarExpr(r) * e);
  return Cell({{0, std::numbers::pi}, {0, 2 * std::numbers::pi}}, SmoothMap(2, std::move(c)));
}

Cell disk_cell(double radius) {
  return Cell({{0, radius}, {0, 2 * std::numbers::pi}}, parse_map("map(r,theta) = r*cos(theta); r*sin(theta)"));
}

Cell interval_cell(double lo, double hi) { return Cell({{lo, hi}}, SmoothMap::identity(1)); }

}  // namespace formcalc
