#pragma once

#include "formcalc/form.hpp"

namespace formcalc {

/// a = dt ^ beta + gamma, where t is the splitting axis and neither part
/// contains dt.
struct FiberSplit {
  DifferentialForm beta;
  DifferentialForm gamma;
};

FiberSplit fiber_split(const DifferentialForm& a, int axis = 0);

/// P(a) = sum_J (int_0^t beta_J(s, x) ds) dx^J. Throws DomainError when a
/// coefficient of beta is not polynomial in t.
DifferentialForm homotopy_P(const DifferentialForm& a, int axis = 0);

/// gamma with t set to 0: the form pi^* s_0^* a.
DifferentialForm restrict_to_slice(const DifferentialForm& a, int axis = 0);

/// d(P a) + P(d a) - (a - pi^* s_0^* a); the zero form when the homotopy
/// identity holds.
DifferentialForm homotopy_identity_check(const DifferentialForm& a, int axis = 0);

/// A form b with d b = a for a closed form a of degree >= 1 with polynomial
/// coefficients, built by applying P along axes 0, 1, ..., n-1 in turn.
/// Throws DomainError if a is not closed or not polynomial.
DifferentialForm primitive(const DifferentialForm& a);

}  // namespace formcalc
