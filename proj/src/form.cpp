#include "formcalc/form.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "formcalc/error.hpp"

namespace formcalc {

Canonical canonicalize(std::span<const int> indices) {
  Canonical out;
  out.index.assign(indices.begin(), indices.end());
  // insertion sort, counting transpositions
  int swaps = 0;
  for (std::size_t i = 1; i < out.index.size(); ++i) {
    for (std::size_t j = i; j > 0 && out.index[j - 1] > out.index[j]; --j) {
      std::swap(out.index[j - 1], out.index[j]);
      ++swaps;
    }
  }
  if (std::adjacent_find(out.index.begin(), out.index.end()) != out.index.end()) {
    out.index.clear();
    out.sign = 0;
    return out;
  }
  out.sign = swaps % 2 == 0 ? 1 : -1;
  return out;
}

DifferentialForm::DifferentialForm(int dimension, int degree) : dimension_(dimension), degree_(degree) {
  if (dimension < 0 || degree < 0) throw DimensionError("form dimension and degree must be non-negative");
}

DifferentialForm DifferentialForm::scalar(int dimension, const ScalarExpr& f) {
  DifferentialForm out(dimension, 0);
  if (!f.is_zero()) out.terms_.emplace(MultiIndex{}, f);
  return out;
}

DifferentialForm DifferentialForm::monomial(int dimension, std::span<const int> indices, const ScalarExpr& f) {
  DifferentialForm out(dimension, static_cast<int>(indices.size()));
  out.accumulate(indices, f);
  return out;
}

ScalarExpr DifferentialForm::coefficient(const MultiIndex& index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? ScalarExpr() : it->second;
}

void DifferentialForm::accumulate(std::span<const int> indices, const ScalarExpr& f) {
  if (static_cast<int>(indices.size()) != degree_) {
    throw DimensionError("term of degree " + std::to_string(indices.size()) + " added to a " +
                         std::to_string(degree_) + "-form");
  }
  for (int i : indices) {
    if (i < 0 || i >= dimension_) {
      throw DimensionError("axis " + std::to_string(i) + " out of range for R^" + std::to_string(dimension_));
    }
  }
  if (f.is_zero()) return;
  Canonical c = canonicalize(indices);
  if (c.sign == 0) return;
  const ScalarExpr signed_f = c.sign > 0 ? f : -f;
  auto [it, inserted] = terms_.try_emplace(c.index, signed_f);
  if (!inserted) {
    it->second = it->second + signed_f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

namespace {

bool leading_sign_negative(const ast::Node& n) {
  switch (n.kind) {
    case ast::Kind::Constant: return sgn(n.value) < 0;
    case ast::Kind::Product: return leading_sign_negative(*n.children.front());
    case ast::Kind::Quotient: return leading_sign_negative(*n.children.front());
    default: return false;
  }
}

}  // namespace

std::string DifferentialForm::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  auto axis_name = [&](int i) {
    return static_cast<std::size_t>(i) < names.size() ? names[static_cast<std::size_t>(i)] : default_axis_name(i);
  };
  std::ostringstream out;
  bool first = true;
  for (const auto& [index, f] : terms_) {
    std::string basis;
    for (std::size_t r = 0; r < index.size(); ++r) {
      if (r > 0) basis += "/\\";
      basis += "d" + axis_name(index[r]);
    }
    ScalarExpr coeff = f;
    const bool negative = leading_sign_negative(*f.to_ast());
    if (negative) coeff = -f;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (basis.empty()) {
      out << coeff.to_string(names);
      continue;
    }
    if (coeff.is_one()) {
      out << basis;
      continue;
    }
    auto node = coeff.to_ast();
    const bool atomic = node->kind == ast::Kind::Variable || node->kind == ast::Kind::Function ||
                        node->kind == ast::Kind::Power ||
                        (node->kind == ast::Kind::Constant && node->value.get_den() == 1) ||
                        node->kind == ast::Kind::Product;
    if (atomic) {
      out << coeff.to_string(names) << '*' << basis;
    } else {
      out << '(' << coeff.to_string(names) << ")*" << basis;
    }
  }
  return out.str();
}

namespace {

void require_same_space(const DifferentialForm& a, const DifferentialForm& b, const char* what) {
  if (a.dimension() != b.dimension()) {
    throw DimensionError(std::string(what) + ": forms live on R^" + std::to_string(a.dimension()) + " and R^" +
                         std::to_string(b.dimension()));
  }
}

}  // namespace

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
  require_same_space(a, b, "add");
  if (a.degree_ != b.degree_) {
    throw DimensionError("add: degrees " + std::to_string(a.degree_) + " and " + std::to_string(b.degree_));
  }
  DifferentialForm out = a;
  for (const auto& [index, f] : b.terms_) out.accumulate(index, f);
  return out;
}

DifferentialForm operator-(const DifferentialForm& a) {
  DifferentialForm out(a.dimension_, a.degree_);
  for (const auto& [index, f] : a.terms_) out.terms_.emplace(index, -f);
  return out;
}

DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) { return a + (-b); }

DifferentialForm operator*(const ScalarExpr& f, const DifferentialForm& a) {
  DifferentialForm out(a.dimension_, a.degree_);
  if (f.is_zero()) return out;
  for (const auto& [index, g] : a.terms_) {
    ScalarExpr c = f * g;
    if (!c.is_zero()) out.terms_.emplace(index, std::move(c));
  }
  return out;
}

bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.dimension_ != b.dimension_ || a.degree_ != b.degree_) return false;
  return a.terms_ == b.terms_;
}

VectorFieldSym::VectorFieldSym(std::vector<ScalarExpr> components) : components_(std::move(components)) {}

VectorFieldSym::VectorFieldSym(int dimension, std::vector<ScalarExpr> components)
    : components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != dimension) {
    throw DimensionError("vector field on R^" + std::to_string(dimension) + " needs " + std::to_string(dimension) +
                         " components, got " + std::to_string(components_.size()));
  }
}

VectorFieldSym VectorFieldSym::unit(int dimension, int axis) {
  std::vector<ScalarExpr> c(static_cast<std::size_t>(dimension));
  c.at(static_cast<std::size_t>(axis)) = ScalarExpr(1);
  return VectorFieldSym(std::move(c));
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  require_same_space(a, b, "wedge");
  DifferentialForm out(a.dimension(), a.degree() + b.degree());
  if (out.degree() > out.dimension()) return out;
  std::vector<int> joined;
  for (const auto& [i, f] : a.terms()) {
    for (const auto& [j, g] : b.terms()) {
      joined.assign(i.begin(), i.end());
      joined.insert(joined.end(), j.begin(), j.end());
      out.accumulate(joined, f * g);
    }
  }
  return out;
}

DifferentialForm exterior_derivative(const DifferentialForm& a) {
  DifferentialForm out(a.dimension(), a.degree() + 1);
  std::vector<int> joined;
  for (const auto& [index, f] : a.terms()) {
    for (int j = 0; j < a.dimension(); ++j) {
      if (std::find(index.begin(), index.end(), j) != index.end()) continue;
      if (!f.depends_on(j)) continue;
      joined.assign(1, j);
      joined.insert(joined.end(), index.begin(), index.end());
      out.accumulate(joined, differentiate(f, j));
    }
  }
  return out;
}

DifferentialForm interior_product(const VectorFieldSym& v, const DifferentialForm& a) {
  if (v.dimension() != a.dimension()) {
    throw DimensionError("interior_product: field on R^" + std::to_string(v.dimension()) + ", form on R^" +
                         std::to_string(a.dimension()));
  }
  if (a.degree() == 0) throw DimensionError("interior_product of a 0-form");
  DifferentialForm out(a.dimension(), a.degree() - 1);
  for (const auto& [index, f] : a.terms()) {
    for (std::size_t r = 0; r < index.size(); ++r) {
      const ScalarExpr& component = v[index[r]];
      if (component.is_zero()) continue;
      MultiIndex rest = index;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(r));
      out.accumulate(rest, r % 2 == 0 ? component * f : -(component * f));
    }
  }
  return out;
}

DifferentialForm lie_derivative(const VectorFieldSym& v, const DifferentialForm& a) {
  if (v.dimension() != a.dimension()) {
    throw DimensionError("lie_derivative: field and form live in different dimensions");
  }
  DifferentialForm da = exterior_derivative(a);
  DifferentialForm second = da.degree() <= da.dimension() ? interior_product(v, da) : DifferentialForm(a.dimension(), a.degree());
  if (a.degree() == 0) return second;
  return exterior_derivative(interior_product(v, a)) + second;
}

bool is_closed(const DifferentialForm& a) { return exterior_derivative(a).is_zero(); }

bool equal(const DifferentialForm& a, const DifferentialForm& b) { return a == b; }

DifferentialForm add(const DifferentialForm& a, const DifferentialForm& b) { return a + b; }

DifferentialForm scale(const DifferentialForm& a, const ScalarExpr& f) { return f * a; }

namespace {

void require_r3(int dimension, const char* what) {
  if (dimension != 3) throw DimensionError(std::string(what) + " is defined on R^3 only");
}

}  // namespace

DifferentialForm omega1(const VectorFieldSym& v) {
  require_r3(v.dimension(), "omega1");
  DifferentialForm out(3, 1);
  for (int i = 0; i < 3; ++i) {
    const int index[] = {i};
    out.accumulate(index, v[i]);
  }
  return out;
}

DifferentialForm omega2(const VectorFieldSym& v) {
  require_r3(v.dimension(), "omega2");
  DifferentialForm out(3, 2);
  const int yz[] = {1, 2};
  const int zx[] = {2, 0};
  const int xy[] = {0, 1};
  out.accumulate(yz, v[0]);
  out.accumulate(zx, v[1]);
  out.accumulate(xy, v[2]);
  return out;
}

VectorFieldSym gradient(const ScalarExpr& f, int dimension) {
  std::vector<ScalarExpr> c;
  for (int i = 0; i < dimension; ++i) c.push_back(differentiate(f, i));
  return VectorFieldSym(std::move(c));
}

VectorFieldSym curl(const VectorFieldSym& v) {
  require_r3(v.dimension(), "curl");
  return VectorFieldSym({differentiate(v[2], 1) - differentiate(v[1], 2), differentiate(v[0], 2) - differentiate(v[2], 0),
                         differentiate(v[1], 0) - differentiate(v[0], 1)});
}

ScalarExpr divergence(const VectorFieldSym& v) {
  ScalarExpr out;
  for (int i = 0; i < v.dimension(); ++i) out += differentiate(v[i], i);
  return out;
}

DifferentialForm volume_form(int dimension) {
  std::vector<int> all(static_cast<std::size_t>(dimension));
  std::iota(all.begin(), all.end(), 0);
  return DifferentialForm::monomial(dimension, all);
}

}  // namespace formcalc
