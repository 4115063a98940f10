#include "formcalc/poincare.hpp"

#include "formcalc/error.hpp"

namespace formcalc {

namespace {

void check_axis(const DifferentialForm& a, int axis) {
  if (axis < 0 || axis >= a.dimension()) throw DimensionError("fiber axis outside R^" + std::to_string(a.dimension()));
}

}  // namespace

FiberSplit fiber_split(const DifferentialForm& a, int axis) {
  check_axis(a, axis);
  FiberSplit out{DifferentialForm(a.dimension(), a.degree() > 0 ? a.degree() - 1 : 0),
                 DifferentialForm(a.dimension(), a.degree())};
  for (const auto& [index, f] : a.terms()) {
    MultiIndex rest;
    int position = -1;
    for (std::size_t p = 0; p < index.size(); ++p) {
      if (index[p] == axis) {
        position = static_cast<int>(p);
      } else {
        rest.push_back(index[p]);
      }
    }
    if (position < 0) {
      out.gamma.accumulate(index, f);
    } else {
      // moving dt to the front takes `position` transpositions
      out.beta.accumulate(rest, position % 2 == 0 ? f : -f);
    }
  }
  return out;
}

DifferentialForm homotopy_P(const DifferentialForm& a, int axis) {
  check_axis(a, axis);
  if (a.degree() == 0) return DifferentialForm(a.dimension(), 0);
  const FiberSplit split = fiber_split(a, axis);
  DifferentialForm out(a.dimension(), a.degree() - 1);
  for (const auto& [index, f] : split.beta.terms()) {
    out.accumulate(index, integrate_polynomial(f, axis, ScalarExpr(0)));
  }
  return out;
}

DifferentialForm restrict_to_slice(const DifferentialForm& a, int axis) {
  check_axis(a, axis);
  std::vector<ScalarExpr> replacements;
  for (int i = 0; i < a.dimension(); ++i) replacements.push_back(i == axis ? ScalarExpr(0) : ScalarExpr::variable(i));
  const FiberSplit split = fiber_split(a, axis);
  DifferentialForm out(a.dimension(), a.degree());
  for (const auto& [index, f] : split.gamma.terms()) out.accumulate(index, substitute(f, replacements));
  return out;
}

DifferentialForm homotopy_identity_check(const DifferentialForm& a, int axis) {
  DifferentialForm lhs = homotopy_P(exterior_derivative(a), axis);
  if (a.degree() > 0) lhs = lhs + exterior_derivative(homotopy_P(a, axis));
  return lhs - (a - restrict_to_slice(a, axis));
}

DifferentialForm primitive(const DifferentialForm& a) {
  if (a.degree() < 1) throw DomainError("primitive needs a form of degree at least 1");
  for (const auto& [index, f] : a.terms()) {
    if (!f.is_polynomial()) throw DomainError("primitive needs polynomial coefficients, got " + f.to_string());
  }
  if (!is_closed(a)) throw DomainError("form is not closed, so it has no primitive");
  DifferentialForm b(a.dimension(), a.degree() - 1);
  DifferentialForm rest = a;
  for (int axis = 0; axis < a.dimension() && !rest.is_zero(); ++axis) {
    const DifferentialForm p = homotopy_P(rest, axis);
    b = b + p;
    rest = rest - exterior_derivative(p);
  }
  if (!rest.is_zero() || !(exterior_derivative(b) == a)) {
    throw Error("primitive construction failed verification for " + a.to_string());
  }
  return b;
}

}  // namespace formcalc
