#include "formcalc/smooth_map.hpp"

#include <functional>

#include "formcalc/error.hpp"

namespace formcalc {

SmoothMap::SmoothMap(int domain_dimension, std::vector<ScalarExpr> components)
    : domain_dimension_(domain_dimension), components_(std::move(components)) {
  if (domain_dimension < 0) throw DimensionError("negative domain dimension");
  for (const auto& c : components_) {
    if (c.arity() > domain_dimension) {
      throw DimensionError("map component " + c.to_string() + " uses variables outside R^" +
                           std::to_string(domain_dimension));
    }
  }
}

SmoothMap SmoothMap::identity(int dimension) {
  std::vector<ScalarExpr> c;
  for (int i = 0; i < dimension; ++i) c.push_back(ScalarExpr::variable(i));
  return SmoothMap(dimension, std::move(c));
}

SmoothMap SmoothMap::linear(const std::vector<std::vector<Rational>>& matrix, int domain_dimension) {
  std::vector<ScalarExpr> c;
  for (const auto& row : matrix) {
    if (static_cast<int>(row.size()) != domain_dimension) throw DimensionError("linear map: ragged matrix");
    ScalarExpr e;
    for (int j = 0; j < domain_dimension; ++j) e += ScalarExpr(row[static_cast<std::size_t>(j)]) * ScalarExpr::variable(j);
    c.push_back(e);
  }
  return SmoothMap(domain_dimension, std::move(c));
}

std::vector<double> SmoothMap::operator()(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != domain_dimension_) throw DimensionError("map evaluated at a point of wrong dimension");
  std::vector<double> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(evaluate(c, point));
  return out;
}

SymbolicMatrix jacobian_symbolic(const SmoothMap& g) {
  SymbolicMatrix out(static_cast<std::size_t>(g.codomain_dimension()));
  for (int i = 0; i < g.codomain_dimension(); ++i) {
    for (int j = 0; j < g.domain_dimension(); ++j) out[static_cast<std::size_t>(i)].push_back(differentiate(g[i], j));
  }
  return out;
}

Eigen::MatrixXd jacobian_at(const SmoothMap& g, std::span<const double> point) {
  if (static_cast<int>(point.size()) != g.domain_dimension()) throw DimensionError("jacobian_at: wrong point dimension");
  const SymbolicMatrix j = jacobian_symbolic(g);
  Eigen::MatrixXd out(g.codomain_dimension(), g.domain_dimension());
  for (int r = 0; r < out.rows(); ++r) {
    for (int c = 0; c < out.cols(); ++c) out(r, c) = evaluate(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], point);
  }
  return out;
}

ScalarExpr jacobian_determinant(const SmoothMap& g) {
  if (g.domain_dimension() != g.codomain_dimension()) throw DimensionError("jacobian_determinant of a non-square map");
  const int n = g.domain_dimension();
  // dg^1 ^ ... ^ dg^n = det(dg) dx^1 ^ ... ^ dx^n
  return pullback_form(g, volume_form(n)).coefficient(volume_form(n).terms().begin()->first);
}

DifferentialForm pullback_form(const SmoothMap& g, const DifferentialForm& a) {
  if (a.dimension() != g.codomain_dimension()) {
    throw DimensionError("pullback: form on R^" + std::to_string(a.dimension()) + " but map lands in R^" +
                         std::to_string(g.codomain_dimension()));
  }
  const int n = g.domain_dimension();
  DifferentialForm out(n, a.degree());
  if (a.is_zero()) return out;
  std::vector<DifferentialForm> dg;
  for (int i = 0; i < g.codomain_dimension(); ++i) dg.push_back(exterior_derivative(DifferentialForm::scalar(n, g[i])));
  // dg^I, memoized by prefix
  std::map<MultiIndex, DifferentialForm> cache;
  std::function<const DifferentialForm&(const MultiIndex&)> wedge_of = [&](const MultiIndex& index) -> const DifferentialForm& {
    auto it = cache.find(index);
    if (it != cache.end()) return it->second;
    DifferentialForm value = DifferentialForm::scalar(n, ScalarExpr(1));
    if (!index.empty()) {
      MultiIndex prefix(index.begin(), index.end() - 1);
      value = wedge(wedge_of(prefix), dg[static_cast<std::size_t>(index.back())]);
    }
    return cache.emplace(index, std::move(value)).first->second;
  };
  for (const auto& [index, f] : a.terms()) {
    const DifferentialForm& basis = wedge_of(index);
    if (basis.is_zero()) continue;
    out = out + substitute(f, g.components()) * basis;
  }
  return out;
}

SmoothMap compose(const SmoothMap& h, const SmoothMap& g) {
  if (h.domain_dimension() != g.codomain_dimension()) {
    throw DimensionError("compose: inner map lands in R^" + std::to_string(g.codomain_dimension()) +
                         ", outer map starts from R^" + std::to_string(h.domain_dimension()));
  }
  std::vector<ScalarExpr> c;
  for (const auto& component : h.components()) c.push_back(substitute(component, g.components()));
  return SmoothMap(g.domain_dimension(), std::move(c));
}

CompiledMap::CompiledMap(const SmoothMap& g) : n_(g.domain_dimension()), m_(g.codomain_dimension()) {
  for (const auto& c : g.components()) components_.emplace_back(c);
  for (const auto& row : jacobian_symbolic(g)) {
    for (const auto& e : row) {
      jacobian_.emplace_back(e);
      jacobian_zero_.push_back(e.is_zero());
    }
  }
}

void CompiledMap::value(std::span<const double> point, std::span<double> out) const {
  for (int i = 0; i < m_; ++i) out[static_cast<std::size_t>(i)] = components_[static_cast<std::size_t>(i)](point);
}

void CompiledMap::jacobian(std::span<const double> point, std::span<double> out) const {
  for (std::size_t i = 0; i < jacobian_.size(); ++i) out[i] = jacobian_zero_[i] ? 0.0 : jacobian_[i](point);
}

}  // namespace formcalc
