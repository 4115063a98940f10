#include "algebra.hpp"

#include <cmath>

#include "formcalc/error.hpp"

namespace formcalc::detail {

GenKind gen_kind(Func f) {
  switch (f) {
    case Func::Exp: return GenKind::Exp;
    case Func::Ln: return GenKind::Ln;
    case Func::Sin: return GenKind::Sin;
    case Func::Cos: return GenKind::Cos;
    case Func::Sqrt: return GenKind::Sqrt;
  }
  return GenKind::Exp;
}

Func gen_func(GenKind k) {
  switch (k) {
    case GenKind::Exp: return Func::Exp;
    case GenKind::Ln: return Func::Ln;
    case GenKind::Sin: return Func::Sin;
    case GenKind::Cos: return Func::Cos;
    case GenKind::Sqrt: return Func::Sqrt;
    case GenKind::Var: break;
  }
  throw Error("coordinate generator has no function");
}

// ---------------------------------------------------------------------------
// Orders

int compare(const Gen& a, const Gen& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.kind == GenKind::Var) {
    if (a.var == b.var) return 0;
    return a.var > b.var ? -1 : 1;
  }
  if (a.arg == b.arg) return 0;
  return compare(*a.arg, *b.arg);
}

int degree(const Monomial& m) {
  int d = 0;
  for (const auto& [g, e] : m) d += e;
  return d;
}

// Graded lex, most significant generator = largest generator.
int compare(const Monomial& a, const Monomial& b) {
  const int da = degree(a), db = degree(b);
  if (da != db) return da < db ? -1 : 1;
  auto i = a.rbegin();
  auto j = b.rbegin();
  while (i != a.rend() && j != b.rend()) {
    const int c = compare(i->first, j->first);
    if (c == 0) {
      if (i->second != j->second) return i->second < j->second ? -1 : 1;
      ++i;
      ++j;
    } else {
      return c > 0 ? 1 : -1;
    }
  }
  if (i != a.rend()) return 1;
  if (j != b.rend()) return -1;
  return 0;
}

int compare(const Poly& a, const Poly& b) {
  auto i = a.rbegin();
  auto j = b.rbegin();
  for (; i != a.rend() && j != b.rend(); ++i, ++j) {
    const int c = compare(i->first, j->first);
    if (c != 0) return c;
    const int d = cmp(i->second, j->second);
    if (d != 0) return d < 0 ? -1 : 1;
  }
  if (i != a.rend()) return 1;
  if (j != b.rend()) return -1;
  return 0;
}

int compare(const Frac& a, const Frac& b) {
  if (const int c = compare(a.num, b.num); c != 0) return c;
  if (a.den.size() != b.den.size()) return a.den.size() < b.den.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.den.size(); ++i) {
    if (const int c = compare(a.den[i].first, b.den[i].first); c != 0) return c;
    if (a.den[i].second != b.den[i].second) return a.den[i].second < b.den[i].second ? -1 : 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Polynomials

namespace {

void add_term(Poly& p, const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) p.erase(it);
  }
}

void add_into(Poly& p, const Poly& q) {
  for (const auto& [m, c] : q) add_term(p, m, c);
}

Monomial merge(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    const int c = compare(i->first, j->first);
    if (c < 0) {
      out.push_back(*i++);
    } else if (c > 0) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.end());
  out.insert(out.end(), j, b.end());
  return out;
}

std::optional<Monomial> mono_divide(const Monomial& a, const Monomial& b) {
  Monomial out;
  auto i = a.begin();
  auto j = b.begin();
  while (j != b.end()) {
    if (i == a.end()) return std::nullopt;
    const int c = compare(i->first, j->first);
    if (c < 0) {
      out.push_back(*i++);
    } else if (c > 0) {
      return std::nullopt;
    } else {
      if (i->second < j->second) return std::nullopt;
      if (i->second > j->second) out.emplace_back(i->first, i->second - j->second);
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.end());
  return out;
}

bool needs_reduction(const Monomial& m) {
  int exps = 0;
  for (const auto& [g, e] : m) {
    switch (g.kind) {
      case GenKind::Exp:
        exps += e;
        break;
      case GenKind::Cos:
        if (e >= 2) return true;
        break;
      case GenKind::Sqrt:
        if (e >= 2 && g.arg->den.empty()) return true;
        break;
      default:
        break;
    }
  }
  return exps > 1;
}

Poly reduce_monomial(const Monomial& m, const Rational& coeff) {
  Monomial rest;
  std::vector<Poly> factors;
  Frac exponent_sum;
  bool has_exp = false;
  for (const auto& [g, e] : m) {
    if (g.kind == GenKind::Exp) {
      exponent_sum = add(exponent_sum, mul(frac_constant(Rational(e)), *g.arg));
      has_exp = true;
    } else if (g.kind == GenKind::Cos && e >= 2) {
      if (e % 2 != 0) rest.emplace_back(g, 1);
      Poly one_minus_sin2 = poly_constant(1);
      add_term(one_minus_sin2, Monomial{{Gen{GenKind::Sin, -1, g.arg}, 2}}, Rational(-1));
      factors.push_back(pow(one_minus_sin2, e / 2));
    } else if (g.kind == GenKind::Sqrt && e >= 2 && g.arg->den.empty()) {
      if (e % 2 != 0) rest.emplace_back(g, 1);
      factors.push_back(pow(g.arg->num, e / 2));
    } else {
      rest.emplace_back(g, e);
    }
  }
  if (has_exp) factors.push_back(apply(GenKind::Exp, exponent_sum).num);
  Poly out;
  out.emplace(std::move(rest), coeff);
  for (const auto& f : factors) out = mul(out, f);
  return out;
}

Poly mul_free(const Poly& a, const Monomial& t, const Rational& c) {
  Poly out;
  for (const auto& [m, k] : a) out.emplace(merge(m, t), k * c);
  return out;
}

}  // namespace

Poly poly_constant(const Rational& c) {
  Poly p;
  if (sgn(c) != 0) p.emplace(Monomial{}, c);
  return p;
}

Poly poly_gen(const Gen& g, int exponent) {
  Poly p;
  p.emplace(Monomial{{g, exponent}}, Rational(1));
  return p;
}

bool is_constant(const Poly& p) { return p.empty() || (p.size() == 1 && p.begin()->first.empty()); }

Rational constant_term(const Poly& p) {
  auto it = p.find(Monomial{});
  return it == p.end() ? Rational(0) : it->second;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out = a;
  add_into(out, b);
  return out;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b) add_term(out, m, -c);
  return out;
}

Poly scale(const Poly& a, const Rational& c) {
  if (sgn(c) == 0) return {};
  Poly out;
  for (const auto& [m, k] : a) out.emplace_hint(out.end(), m, k * c);
  return out;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Monomial m = merge(ma, mb);
      Rational c = ca * cb;
      if (needs_reduction(m)) {
        add_into(out, reduce_monomial(m, c));
      } else {
        add_term(out, m, c);
      }
    }
  }
  return out;
}

Poly pow(const Poly& a, int exponent) {
  Poly result = poly_constant(1);
  Poly base = a;
  while (exponent > 0) {
    if (exponent & 1) result = mul(result, base);
    exponent >>= 1;
    if (exponent > 0) base = mul(base, base);
  }
  return result;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.empty()) return std::nullopt;
  const auto& [lead_m, lead_c] = *b.rbegin();
  Poly r = a;
  Poly q;
  while (!r.empty()) {
    const auto& [rm, rc] = *r.rbegin();
    auto t = mono_divide(rm, lead_m);
    if (!t) return std::nullopt;
    Rational c = rc / lead_c;
    add_term(q, *t, c);
    const Poly shifted = mul_free(b, *t, c);
    for (const auto& [m, k] : shifted) add_term(r, m, -k);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Fractions

namespace {

using FactorMap = std::map<Poly, int, PolyLess>;

Rational content(const Poly& p) {
  Integer g = 0;
  Integer l = 1;
  for (const auto& [m, c] : p) {
    g = gcd(g, c.get_num());
    l = lcm(l, c.get_den());
  }
  Rational out(g, l);
  out.canonicalize();
  if (sgn(p.rbegin()->second) < 0) out = -out;
  return out;
}

Rational rational_pow(const Rational& c, int k) {
  Rational out = 1;
  for (int i = 0; i < k; ++i) out *= c;
  return out;
}

void absorb(Poly& num, FactorMap& factors, const Poly& p, int mult);

void absorb_generator(Poly& num, FactorMap& factors, const Gen& g, int j) {
  if (g.kind == GenKind::Exp) {
    num = mul(num, apply(GenKind::Exp, mul(frac_constant(Rational(-j)), *g.arg)).num);
  } else if (g.kind == GenKind::Sqrt && g.arg->den.empty()) {
    // 1/sqrt(u)^j = sqrt(u)^(j mod 2) / u^ceil(j/2)
    if (j % 2 != 0) num = mul(num, poly_gen(g));
    absorb(num, factors, g.arg->num, (j + 1) / 2);
  } else {
    factors[poly_gen(g)] += j;
  }
}

void absorb(Poly& num, FactorMap& factors, const Poly& p, int mult) {
  if (p.empty()) throw DomainError("division by zero");
  if (mult == 0) return;
  if (is_constant(p)) {
    num = scale(num, 1 / rational_pow(p.begin()->second, mult));
    return;
  }
  // Monomial content: generators present in every term, with minimal exponent.
  Monomial common = p.begin()->first;
  for (const auto& [m, c] : p) {
    Monomial next;
    auto i = common.begin();
    auto j = m.begin();
    while (i != common.end() && j != m.end()) {
      const int cmpv = compare(i->first, j->first);
      if (cmpv < 0) {
        ++i;
      } else if (cmpv > 0) {
        ++j;
      } else {
        next.emplace_back(i->first, std::min(i->second, j->second));
        ++i;
        ++j;
      }
    }
    common = std::move(next);
    if (common.empty()) break;
  }
  Poly q;
  for (const auto& [m, c] : p) q.emplace(*mono_divide(m, common), c);
  const Rational k = content(q);
  q = scale(q, 1 / k);
  num = scale(num, 1 / rational_pow(k, mult));
  for (const auto& [g, e] : common) absorb_generator(num, factors, g, e * mult);
  if (!is_constant(q)) factors[q] += mult;
}

Frac finish(Poly num, FactorMap factors) {
  Frac out;
  if (num.empty()) return out;
  for (auto& [f, m] : factors) {
    while (m > 0) {
      auto quotient = divide_exact(num, f);
      if (!quotient) break;
      num = mul(*quotient, poly_constant(1));
      --m;
    }
  }
  out.num = std::move(num);
  for (auto& [f, m] : factors) {
    if (m > 0) out.den.emplace_back(f, m);
  }
  return out;
}

FactorMap to_map(const std::vector<std::pair<Poly, int>>& den) {
  FactorMap out;
  for (const auto& [f, m] : den) out.emplace(f, m);
  return out;
}

Poly factor_product(const FactorMap& factors, const std::vector<std::pair<Poly, int>>& have) {
  // prod f^(want - have)
  Poly out = poly_constant(1);
  for (const auto& [f, want] : factors) {
    int got = 0;
    for (const auto& [g, m] : have) {
      if (compare(f, g) == 0) {
        got = m;
        break;
      }
    }
    if (want > got) out = mul(out, pow(f, want - got));
  }
  return out;
}

}  // namespace

Frac make_frac(Poly num) {
  Frac f;
  f.num = std::move(num);
  return f;
}

Frac frac_constant(const Rational& c) { return make_frac(poly_constant(c)); }

Frac frac_var(int axis) { return make_frac(poly_gen(Gen{GenKind::Var, axis, nullptr})); }

bool is_zero(const Frac& a) { return a.num.empty(); }

Frac add(const Frac& a, const Frac& b) {
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  if (a.den.empty() && b.den.empty()) return make_frac(add(a.num, b.num));
  FactorMap lcm_map = to_map(a.den);
  for (const auto& [f, m] : b.den) {
    int& slot = lcm_map[f];
    slot = std::max(slot, m);
  }
  Poly num = add(mul(a.num, factor_product(lcm_map, a.den)), mul(b.num, factor_product(lcm_map, b.den)));
  return finish(std::move(num), std::move(lcm_map));
}

Frac neg(const Frac& a) {
  Frac out = a;
  for (auto& [m, c] : out.num) c = -c;
  return out;
}

Frac sub(const Frac& a, const Frac& b) { return add(a, neg(b)); }

Frac mul(const Frac& a, const Frac& b) {
  if (is_zero(a) || is_zero(b)) return {};
  Poly num = mul(a.num, b.num);
  if (a.den.empty() && b.den.empty()) return make_frac(std::move(num));
  FactorMap factors = to_map(a.den);
  for (const auto& [f, m] : b.den) factors[f] += m;
  return finish(std::move(num), std::move(factors));
}

Frac inv(const Frac& a) {
  if (is_zero(a)) throw DomainError("division by zero");
  Poly num = poly_constant(1);
  for (const auto& [f, m] : a.den) num = mul(num, pow(f, m));
  FactorMap factors;
  absorb(num, factors, a.num, 1);
  return finish(std::move(num), std::move(factors));
}

Frac div(const Frac& a, const Frac& b) { return mul(a, inv(b)); }

Frac pow(const Frac& a, int exponent) {
  if (exponent == 0) return frac_constant(1);
  if (exponent < 0) return pow(inv(a), -exponent);
  if (is_zero(a)) return {};
  Frac out;
  out.num = pow(a.num, exponent);
  for (const auto& [f, m] : a.den) out.den.emplace_back(f, m * exponent);
  if (out.den.empty()) return out;
  return finish(std::move(out.num), to_map(out.den));
}

Frac apply(GenKind kind, const Frac& arg) {
  const bool constant = arg.den.empty() && is_constant(arg.num);
  const Rational value = constant ? constant_term(arg.num) : Rational(0);
  switch (kind) {
    case GenKind::Exp:
      if (is_zero(arg)) return frac_constant(1);
      break;
    case GenKind::Ln:
      if (constant && value == 1) return {};
      if (arg.den.empty() && arg.num.size() == 1) {
        const auto& [m, c] = *arg.num.begin();
        if (c == 1 && m.size() == 1 && m[0].first.kind == GenKind::Exp && m[0].second == 1) {
          return *m[0].first.arg;
        }
      }
      break;
    case GenKind::Sin:
      if (is_zero(arg)) return {};
      break;
    case GenKind::Cos:
      if (is_zero(arg)) return frac_constant(1);
      break;
    case GenKind::Sqrt:
      if (is_zero(arg)) return {};
      if (constant && sgn(value) > 0) {
        const Integer& n = value.get_num();
        const Integer& d = value.get_den();
        if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
          Rational r(Integer(sqrt(n)), Integer(sqrt(d)));
          r.canonicalize();
          return frac_constant(r);
        }
      }
      break;
    case GenKind::Var:
      throw Error("apply: coordinate is not a function");
  }
  return make_frac(poly_gen(Gen{kind, -1, std::make_shared<const Frac>(arg)}));
}

// ---------------------------------------------------------------------------
// Calculus

bool depends_on(const Gen& g, int axis) {
  if (g.kind == GenKind::Var) return g.var == axis;
  return depends_on(*g.arg, axis);
}

namespace {

bool poly_depends_on(const Poly& p, int axis) {
  for (const auto& [m, c] : p) {
    for (const auto& [g, e] : m) {
      if (depends_on(g, axis)) return true;
    }
  }
  return false;
}

int poly_arity(const Poly& p) {
  int out = 0;
  for (const auto& [m, c] : p) {
    for (const auto& [g, e] : m) {
      out = std::max(out, g.kind == GenKind::Var ? g.var + 1 : arity(*g.arg));
    }
  }
  return out;
}

Frac gen_derivative(const Gen& g, int axis) {
  switch (g.kind) {
    case GenKind::Var:
      return g.var == axis ? frac_constant(1) : Frac{};
    case GenKind::Exp:
      return mul(make_frac(poly_gen(g)), derivative(*g.arg, axis));
    case GenKind::Ln:
      return div(derivative(*g.arg, axis), *g.arg);
    case GenKind::Sin:
      return mul(apply(GenKind::Cos, *g.arg), derivative(*g.arg, axis));
    case GenKind::Cos:
      return neg(mul(apply(GenKind::Sin, *g.arg), derivative(*g.arg, axis)));
    case GenKind::Sqrt:
      return mul(derivative(*g.arg, axis), inv(make_frac(scale(poly_gen(g), Rational(2)))));
  }
  return {};
}

Frac poly_derivative(const Poly& p, int axis) {
  std::vector<std::pair<Gen, Frac>> cache;
  auto gen_d = [&](const Gen& g) -> const Frac& {
    for (const auto& [h, d] : cache) {
      if (compare(g, h) == 0) return d;
    }
    cache.emplace_back(g, gen_derivative(g, axis));
    return cache.back().second;
  };
  Poly poly_part;
  Frac frac_part;
  for (const auto& [m, c] : p) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      const auto& [g, e] = m[i];
      if (!depends_on(g, axis)) continue;
      Monomial rest = m;
      if (e == 1) {
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        rest[i].second = e - 1;
      }
      Poly rest_poly;
      rest_poly.emplace(std::move(rest), c * e);
      const Frac& d = gen_d(g);
      if (d.den.empty()) {
        add_into(poly_part, mul(rest_poly, d.num));
      } else {
        frac_part = add(frac_part, mul(make_frac(std::move(rest_poly)), d));
      }
    }
  }
  return add(make_frac(std::move(poly_part)), frac_part);
}

}  // namespace

bool depends_on(const Frac& a, int axis) {
  if (poly_depends_on(a.num, axis)) return true;
  for (const auto& [f, m] : a.den) {
    if (poly_depends_on(f, axis)) return true;
  }
  return false;
}

int arity(const Frac& a) {
  int out = poly_arity(a.num);
  for (const auto& [f, m] : a.den) out = std::max(out, poly_arity(f));
  return out;
}

Frac derivative(const Frac& a, int axis) {
  if (!depends_on(a, axis)) return {};
  Frac out = poly_derivative(a.num, axis);
  if (a.den.empty()) return out;
  Frac inverse_den;
  inverse_den.num = poly_constant(1);
  inverse_den.den = a.den;
  out = mul(out, inverse_den);
  // d(N/D) = N'/D - (N/D) * sum m f'/f
  Frac log_derivative;
  for (const auto& [f, m] : a.den) {
    if (!poly_depends_on(f, axis)) continue;
    Frac term = mul(poly_derivative(f, axis), inv(make_frac(f)));
    log_derivative = add(log_derivative, mul(frac_constant(Rational(m)), term));
  }
  return sub(out, mul(a, log_derivative));
}

Frac substitute(const Frac& a, std::span<const Frac> images) {
  std::vector<std::pair<Gen, Frac>> cache;
  auto image = [&](const Gen& g) -> const Frac& {
    for (const auto& [h, v] : cache) {
      if (compare(g, h) == 0) return v;
    }
    Frac v = g.kind == GenKind::Var ? images[static_cast<std::size_t>(g.var)]
                                    : apply(g.kind, substitute(*g.arg, images));
    cache.emplace_back(g, std::move(v));
    return cache.back().second;
  };
  auto sub_poly = [&](const Poly& p) {
    Poly poly_acc;
    Frac frac_acc;
    for (const auto& [m, c] : p) {
      Frac term = frac_constant(c);
      for (const auto& [g, e] : m) term = mul(term, pow(image(g), e));
      if (term.den.empty()) {
        add_into(poly_acc, term.num);
      } else {
        frac_acc = add(frac_acc, term);
      }
    }
    return add(make_frac(std::move(poly_acc)), frac_acc);
  };
  Frac out = sub_poly(a.num);
  for (const auto& [f, m] : a.den) out = div(out, pow(sub_poly(f), m));
  return out;
}

namespace {

double evaluate_gen(const Gen& g, std::span<const double> point) {
  if (g.kind == GenKind::Var) return point[static_cast<std::size_t>(g.var)];
  const double v = evaluate(*g.arg, point);
  switch (g.kind) {
    case GenKind::Exp: return std::exp(v);
    case GenKind::Ln:
      if (!(v > 0)) throw DomainError("ln of non-positive value");
      return std::log(v);
    case GenKind::Sin: return std::sin(v);
    case GenKind::Cos: return std::cos(v);
    case GenKind::Sqrt:
      if (v < 0) throw DomainError("sqrt of negative value");
      return std::sqrt(v);
    case GenKind::Var: break;
  }
  return 0;
}

double evaluate_poly(const Poly& p, std::span<const double> point) {
  double sum = 0;
  for (const auto& [m, c] : p) {
    double term = c.get_d();
    for (const auto& [g, e] : m) term *= std::pow(evaluate_gen(g, point), e);
    sum += term;
  }
  return sum;
}

}  // namespace

double evaluate(const Frac& a, std::span<const double> point) {
  double den = 1;
  for (const auto& [f, m] : a.den) {
    const double v = evaluate_poly(f, point);
    if (v == 0) throw DomainError("division by zero");
    den *= std::pow(v, m);
  }
  return evaluate_poly(a.num, point) / den;
}

}  // namespace formcalc::detail
