#pragma once

#include <gmpxx.h>

#include <string>

namespace formcalc {

/// Exact rational number. Always kept in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace formcalc
