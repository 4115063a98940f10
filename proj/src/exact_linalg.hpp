#pragma once

#include <vector>

#include "formcalc/rational.hpp"

namespace formcalc::detail {

using QMatrix = std::vector<std::vector<Rational>>;

/// Rank by fraction-free (Bareiss) elimination after clearing denominators row
/// by row.
long rank(const QMatrix& m);

/// Basis of {x : m x = 0}, one vector per entry; `columns` is needed when m has
/// no rows.
std::vector<std::vector<Rational>> nullspace(const QMatrix& m, std::size_t columns);

QMatrix multiply(const QMatrix& a, const QMatrix& b, std::size_t inner);

}  // namespace formcalc::detail
