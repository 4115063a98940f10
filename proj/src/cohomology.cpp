#include "formcalc/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "exact_linalg.hpp"
#include "formcalc/error.hpp"
#include "formcalc/parser.hpp"

namespace formcalc {

using detail::QMatrix;

namespace {

using Levels = std::vector<std::vector<Simplex>>;

long index_of(const std::vector<Simplex>& list, const Simplex& s) {
  auto it = std::lower_bound(list.begin(), list.end(), s);
  if (it == list.end() || *it != s) return -1;
  return it - list.begin();
}

// Rows are (k+1)-simplices, columns k-simplices.
QMatrix coboundary(const std::vector<Simplex>& lower, const std::vector<Simplex>& upper) {
  QMatrix m(upper.size(), std::vector<Rational>(lower.size(), Rational(0)));
  for (std::size_t r = 0; r < upper.size(); ++r) {
    const Simplex& s = upper[r];
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<long>(i));
      const long c = index_of(lower, face);
      if (c < 0) throw Error("nerve is not closed under faces");
      m[r][static_cast<std::size_t>(c)] = (i % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

const std::vector<Simplex>& level(const Levels& levels, int k) {
  static const std::vector<Simplex> empty;
  if (k < 0 || k >= static_cast<int>(levels.size())) return empty;
  return levels[static_cast<std::size_t>(k)];
}

Levels restrict_levels(const Nerve& nerve, const std::vector<bool>& in) {
  Levels out;
  for (int k = 0; k <= nerve.top_degree(); ++k) {
    std::vector<Simplex> keep;
    for (const auto& s : nerve.simplices(k)) {
      if (std::all_of(s.begin(), s.end(), [&](int v) { return in[static_cast<std::size_t>(v)]; })) keep.push_back(s);
    }
    out.push_back(std::move(keep));
  }
  return out;
}

std::vector<long> betti_of(const Levels& levels, int top) {
  std::vector<long> ranks(static_cast<std::size_t>(top + 2), 0);
  for (int k = 0; k <= top; ++k) {
    ranks[static_cast<std::size_t>(k)] = detail::rank(coboundary(level(levels, k), level(levels, k + 1)));
  }
  std::vector<long> b;
  for (int k = 0; k <= top; ++k) {
    const long dim = static_cast<long>(level(levels, k).size());
    b.push_back(dim - ranks[static_cast<std::size_t>(k)] - (k > 0 ? ranks[static_cast<std::size_t>(k - 1)] : 0));
  }
  return b;
}

// Cochain f on `from` restricted to the simplices of `to` (a sublist).
std::vector<Rational> restrict_cochain(const std::vector<Rational>& f, const std::vector<Simplex>& from,
                                       const std::vector<Simplex>& to) {
  std::vector<Rational> out;
  out.reserve(to.size());
  for (const auto& s : to) out.push_back(f[static_cast<std::size_t>(index_of(from, s))]);
  return out;
}

std::vector<std::vector<Rational>> columns(const QMatrix& m, std::size_t cols) {
  std::vector<std::vector<Rational>> out(cols, std::vector<Rational>(m.size()));
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) out[c][r] = m[r][c];
  }
  return out;
}

// Coboundaries delta(C^{k-1}) inside C^k, as vectors.
std::vector<std::vector<Rational>> coboundaries(const Levels& levels, int k) {
  if (k == 0) return {};
  return columns(coboundary(level(levels, k - 1), level(levels, k)), level(levels, k - 1).size());
}

std::vector<std::vector<Rational>> cocycles(const Levels& levels, int k) {
  return detail::nullspace(coboundary(level(levels, k), level(levels, k + 1)), level(levels, k).size());
}

std::vector<Rational> concat(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Rank of the map induced on the quotient by `boundaries`.
long induced_rank(const std::vector<std::vector<Rational>>& images, const std::vector<std::vector<Rational>>& boundaries) {
  QMatrix all = boundaries;
  all.insert(all.end(), images.begin(), images.end());
  return detail::rank(all) - detail::rank(boundaries);
}

}  // namespace

// ---------------------------------------------------------------------------

Nerve::Nerve(int vertices, const std::vector<Simplex>& simplices) : vertices_(vertices) {
  if (vertices < 1) throw InputError("nerve needs at least one vertex");
  std::set<Simplex> all;
  for (int v = 0; v < vertices; ++v) all.insert({v});
  for (Simplex s : simplices) {
    if (s.empty()) throw InputError("nerve contains an empty simplex");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError("nerve simplex repeats a vertex");
    if (s.front() < 0 || s.back() >= vertices) throw InputError("nerve simplex uses a vertex outside 0.." + std::to_string(vertices - 1));
    if (s.size() > 20) throw InputError("nerve simplex too large");
    const std::size_t n = s.size();
    for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1UL << i)) face.push_back(s[i]);
      }
      all.insert(std::move(face));
    }
  }
  for (const auto& s : all) {
    const std::size_t k = s.size() - 1;
    if (by_degree_.size() <= k) by_degree_.resize(k + 1);
    by_degree_[k].push_back(s);
  }
}

const std::vector<Simplex>& Nerve::simplices(int degree) const { return level(by_degree_, degree); }

std::size_t Nerve::simplex_count() const {
  std::size_t n = 0;
  for (const auto& l : by_degree_) n += l.size();
  return n;
}

long Nerve::euler_characteristic() const {
  long chi = 0;
  for (std::size_t k = 0; k < by_degree_.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(by_degree_[k].size());
  return chi;
}

Nerve Nerve::full_subcomplex(const std::vector<int>& vertices) const {
  std::vector<int> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.empty()) throw DomainError("empty vertex set");
  std::vector<int> relabel(static_cast<std::size_t>(vertices_), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= vertices_) throw DomainError("vertex outside the nerve");
    relabel[static_cast<std::size_t>(sorted[i])] = static_cast<int>(i);
  }
  std::vector<Simplex> kept;
  for (const auto& l : by_degree_) {
    for (const auto& s : l) {
      Simplex t;
      for (int v : s) {
        if (relabel[static_cast<std::size_t>(v)] < 0) break;
        t.push_back(relabel[static_cast<std::size_t>(v)]);
      }
      if (t.size() == s.size()) kept.push_back(std::move(t));
    }
  }
  return Nerve(static_cast<int>(sorted.size()), kept);
}

bool CochainComplex::squares_to_zero() const {
  for (std::size_t k = 0; k + 1 < delta.size(); ++k) {
    const QMatrix product = detail::multiply(delta[k + 1], delta[k], static_cast<std::size_t>(dimensions[k + 1]));
    for (const auto& row : product) {
      for (const auto& v : row) {
        if (v != 0) return false;
      }
    }
  }
  return true;
}

CochainComplex cochain_complex(const Nerve& nerve) {
  CochainComplex c;
  for (int k = 0; k <= nerve.top_degree(); ++k) {
    c.dimensions.push_back(static_cast<long>(nerve.simplices(k).size()));
    if (k < nerve.top_degree()) c.delta.push_back(coboundary(nerve.simplices(k), nerve.simplices(k + 1)));
  }
  return c;
}

std::vector<long> cech_cohomology(const Nerve& nerve) {
  std::vector<bool> all(static_cast<std::size_t>(nerve.vertex_count()), true);
  return betti_of(restrict_levels(nerve, all), nerve.top_degree());
}

MayerVietorisData mayer_vietoris_data(const Nerve& nerve, const std::vector<int>& u, const std::vector<int>& v) {
  const std::size_t n = static_cast<std::size_t>(nerve.vertex_count());
  std::vector<bool> in_x(n, true), in_u(n, false), in_v(n, false), in_uv(n, false);
  for (int a : u) {
    if (a < 0 || a >= nerve.vertex_count()) throw DomainError("cover vertex outside the nerve");
    in_u[static_cast<std::size_t>(a)] = true;
  }
  for (int a : v) {
    if (a < 0 || a >= nerve.vertex_count()) throw DomainError("cover vertex outside the nerve");
    in_v[static_cast<std::size_t>(a)] = true;
  }
  for (std::size_t i = 0; i < n; ++i) in_uv[i] = in_u[i] && in_v[i];
  const Levels lx = restrict_levels(nerve, in_x);
  const Levels lu = restrict_levels(nerve, in_u);
  const Levels lv = restrict_levels(nerve, in_v);
  const Levels luv = restrict_levels(nerve, in_uv);
  for (int k = 0; k <= nerve.top_degree(); ++k) {
    for (const auto& s : level(lx, k)) {
      if (index_of(level(lu, k), s) < 0 && index_of(level(lv, k), s) < 0) {
        throw DomainError("U and V do not cover the simplex " + std::to_string(s.front()) + "..." + std::to_string(s.back()));
      }
    }
  }

  const int top = nerve.top_degree();
  MayerVietorisData d;
  d.x = betti_of(lx, top);
  d.u = betti_of(lu, top);
  d.v = betti_of(lv, top);
  d.intersection = betti_of(luv, top);
  for (int k = 0; k <= top; ++k) {
    const auto K = static_cast<std::size_t>(k);
    d.sum.push_back(d.u[K] + d.v[K]);

    const auto& xs = level(lx, k);
    const auto& us = level(lu, k);
    const auto& vs = level(lv, k);
    const auto& uvs = level(luv, k);
    const std::vector<Rational> zero_u(us.size(), Rational(0));
    const std::vector<Rational> zero_v(vs.size(), Rational(0));

    std::vector<std::vector<Rational>> boundaries;
    for (const auto& b : coboundaries(lu, k)) boundaries.push_back(concat(b, zero_v));
    for (const auto& b : coboundaries(lv, k)) boundaries.push_back(concat(zero_u, b));
    std::vector<std::vector<Rational>> images;
    for (const auto& z : cocycles(lx, k)) images.push_back(concat(restrict_cochain(z, xs, us), restrict_cochain(z, xs, vs)));
    d.rank_i.push_back(induced_rank(images, boundaries));

    images.clear();
    for (const auto& z : cocycles(lu, k)) images.push_back(restrict_cochain(z, us, uvs));
    for (const auto& z : cocycles(lv, k)) {
      std::vector<Rational> r = restrict_cochain(z, vs, uvs);
      for (auto& q : r) q = -q;
      images.push_back(std::move(r));
    }
    d.rank_j.push_back(induced_rank(images, coboundaries(luv, k)));
    d.rank_d.push_back(d.intersection[K] - d.rank_j.back());
  }
  return d;
}

// ---------------------------------------------------------------------------

ExactSequenceSolution mv_solve(const ExactSequenceProblem& problem) {
  ExactSequenceSolution sol{SolveStatus::Solved, problem.slots, problem.ranks, ""};
  auto& d = sol.slots;
  auto& r = sol.ranks;
  const std::size_t S = d.size();
  auto fail = [&](std::string msg) {
    sol.status = SolveStatus::Inconsistent;
    sol.message = std::move(msg);
    return sol;
  };
  if (S < 2) return fail("an exact sequence needs at least two slots");
  if (r.size() != S - 1) return fail("expected " + std::to_string(S - 1) + " maps for " + std::to_string(S) + " slots");
  for (std::size_t s = 0; s < S; ++s) {
    if (d[s] && *d[s] < 0) return fail("slot " + std::to_string(s) + " has negative dimension");
  }
  for (std::size_t m = 0; m + 1 < S; ++m) {
    if (r[m] && *r[m] < 0) return fail("map " + std::to_string(m) + " has negative rank");
  }
  for (std::size_t s : {std::size_t{0}, S - 1}) {
    if (d[s] && *d[s] != 0) return fail("the sequence must begin and end with a zero slot");
    d[s] = 0;
  }

  // Exactness at slot s: dim S_s = rank(incoming) + rank(outgoing).
  // the maps into the first slot and out of the last one are zero
  std::optional<long> edge = 0;
  auto incoming = [&](std::size_t s) -> std::optional<long>& { return s == 0 ? edge : r[s - 1]; };
  auto outgoing = [&](std::size_t s) -> std::optional<long>& { return s + 1 == S ? edge : r[s]; };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < S; ++s) {
      std::optional<long>& in = incoming(s);
      std::optional<long>& out = outgoing(s);
      auto set = [&](std::optional<long>& slot, long value) -> bool {
        if (value < 0) return false;
        slot = value;
        changed = true;
        return true;
      };
      if (d[s] && *d[s] == 0) {
        if ((in && *in != 0) || (out && *out != 0)) return fail("slot " + std::to_string(s) + " is zero but an adjacent map has nonzero rank");
        if (!in) set(in, 0);
        if (!out) set(out, 0);
        continue;
      }
      const int known = (d[s] ? 1 : 0) + (in ? 1 : 0) + (out ? 1 : 0);
      if (known == 3) {
        if (*d[s] != *in + *out) {
          return fail("exactness fails at slot " + std::to_string(s) + ": " + std::to_string(*d[s]) + " != " +
                      std::to_string(*in) + " + " + std::to_string(*out));
        }
      } else if (known == 2) {
        bool ok = true;
        if (!d[s]) ok = set(d[s], *in + *out);
        else if (!in) ok = set(in, *d[s] - *out);
        else ok = set(out, *d[s] - *in);
        if (!ok) return fail("exactness at slot " + std::to_string(s) + " forces a negative dimension");
      }
    }
  }
  for (std::size_t m = 0; m + 1 < S; ++m) {
    if (r[m] && ((d[m] && *r[m] > *d[m]) || (d[m + 1] && *r[m] > *d[m + 1]))) {
      return fail("map " + std::to_string(m) + " has rank larger than its source or target");
    }
  }

  std::vector<std::string> unknown;
  for (std::size_t s = 0; s < S; ++s) {
    if (!d[s]) unknown.push_back("slot " + std::to_string(s));
  }
  for (std::size_t m = 0; m + 1 < S; ++m) {
    if (!r[m]) unknown.push_back("map " + std::to_string(m));
  }
  if (!unknown.empty()) {
    sol.status = SolveStatus::UnderDetermined;
    sol.message = "the data do not determine";
    for (std::size_t i = 0; i < unknown.size(); ++i) sol.message += (i ? ", " : " ") + unknown[i];
  }
  return sol;
}

int mv_slot(int degree, MvTerm term) { return 1 + 3 * degree + static_cast<int>(term); }

ExactSequenceProblem mayer_vietoris_problem(const std::vector<long>& sum, const std::vector<long>& intersection) {
  const int top = static_cast<int>(std::max(sum.size(), intersection.size())) - 1;
  const std::size_t S = static_cast<std::size_t>(3 * (top + 1) + 2);
  ExactSequenceProblem p;
  p.slots.assign(S, std::nullopt);
  p.ranks.assign(S - 1, std::nullopt);
  p.slots.front() = 0;
  p.slots.back() = 0;
  for (int k = 0; k <= top; ++k) {
    const auto K = static_cast<std::size_t>(k);
    p.slots[static_cast<std::size_t>(mv_slot(k, MvTerm::Sum))] = K < sum.size() ? sum[K] : 0;
    p.slots[static_cast<std::size_t>(mv_slot(k, MvTerm::Intersection))] = K < intersection.size() ? intersection[K] : 0;
  }
  return p;
}

std::vector<long> sphere_betti(int n) {
  if (n < 0) throw DomainError("sphere dimension must be non-negative");
  if (n == 0) return {2};
  std::vector<long> equator = sphere_betti(n - 1);
  std::vector<long> caps(static_cast<std::size_t>(n + 1), 0);
  caps[0] = 2;
  equator.resize(static_cast<std::size_t>(n + 1), 0);
  ExactSequenceProblem p = mayer_vietoris_problem(caps, equator);
  p.slots[static_cast<std::size_t>(mv_slot(0, MvTerm::Space))] = 1;  // S^n is connected
  const ExactSequenceSolution sol = mv_solve(p);
  if (sol.status != SolveStatus::Solved) throw Error("sphere recursion did not close: " + sol.message);
  std::vector<long> b;
  for (int k = 0; k <= n; ++k) b.push_back(*sol.slots[static_cast<std::size_t>(mv_slot(k, MvTerm::Space))]);
  return b;
}

// ---------------------------------------------------------------------------

ScalarExpr s1_partition_ramp() {
  const ScalarExpr u = ScalarExpr(5) * ScalarExpr::variable(1) + ScalarExpr(Rational(1, 2));
  return ScalarExpr(3) * u.pow(2) - ScalarExpr(2) * u.pow(3);
}

S1Generator s1_connecting_generator(const Rational& a, const Rational& b, const QuadratureSpec& spec) {
  const ScalarExpr rho_v = s1_partition_ramp();
  const ScalarExpr rho_u = ScalarExpr(1) - rho_v;
  const double half_width = std::asin(0.1);
  constexpr double pi = std::numbers::pi;
  const SmoothMap circle = parse_map("map(theta) = cos(theta); sin(theta)");

  S1Generator g;
  g.integral = 0;
  const std::pair<const char*, Rational> components[] = {{"x > 0", a}, {"x < 0", b}};
  for (const auto& [region, value] : components) {
    const ScalarExpr gamma(value);
    const DifferentialForm on_u = exterior_derivative(DifferentialForm::scalar(2, rho_v * gamma));
    const DifferentialForm on_v = -exterior_derivative(DifferentialForm::scalar(2, rho_u * gamma));
    if (!(on_u == on_v)) throw Error("connecting-map representatives disagree on the overlap");
    const double centre = std::string(region) == "x > 0" ? 0.0 : pi;
    Cell arc({{centre - half_width, centre + half_width}}, circle);
    g.integral += integrate_cell(on_u, arc, spec);
    g.pieces.push_back({region, on_u, on_v, std::move(arc)});
  }
  g.note =
      "rho_V is the C^1 cubic smoothstep 3u^2 - 2u^3 with u = 5y + 1/2 on |y| <= 1/10 (0 below, 1 above), "
      "not a C-infinity bump; d(rho_V) is continuous, which is all the integral needs.";
  return g;
}

double S1Generator::density(double theta) const {
  const double x = std::cos(theta);
  const double y = std::sin(theta);
  if (std::abs(y) > 0.1) return 0.0;
  const Piece& p = pieces[x > 0 ? 0 : 1];
  const double point[] = {x, y};
  const double tangent[] = {-y, x};
  double v = 0;
  for (const auto& [index, f] : p.on_u.terms()) v += evaluate(f, point) * tangent[index[0]];
  return v;
}

std::vector<KnownValue> known_value_tables() {
  std::vector<KnownValue> t;
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k <= n; ++k) {
      t.push_back({"R^" + std::to_string(n), "H^" + std::to_string(k) + "_c", compactly_supported_dimension(n, k),
                   "compactly supported cohomology of R^n is R in degree n and 0 otherwise"});
    }
  }
  t.push_back({"compact connected orientable n-manifold", "H^n", 1, "top cohomology of a compact connected orientable manifold is R"});
  t.push_back({"compact connected non-orientable n-manifold", "H^n", 0, "top cohomology vanishes without an orientation"});
  t.push_back({"connected manifold", "H^0", 1, "locally constant functions on a connected space are constant"});
  t.push_back({"point", "H^0", 1, "functions on a point are numbers"});
  t.push_back({"R^n", "H^k", 0, "for k >= 1: closed forms of positive degree on R^n are exact"});
  return t;
}

long compactly_supported_dimension(int n, int k) {
  if (n < 0) throw DomainError("negative dimension");
  return k == n ? 1 : 0;
}

bool poincare_duality_check(const std::vector<long>& betti, bool orientable) {
  if (!orientable) throw DomainError("Poincare duality needs an orientable manifold");
  for (std::size_t k = 0; k < betti.size(); ++k) {
    if (betti[k] != betti[betti.size() - 1 - k]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Nerve point_nerve() { return Nerve(1, {{0}}); }

Nerve circle_nerve() { return Nerve(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

Nerve sphere_nerve(int n) {
  if (n < 0 || n > 6) throw DomainError("sphere nerve supports 0 <= n <= 6");
  const int axes = n + 1;
  std::vector<Simplex> facets;
  for (int mask = 0; mask < (1 << axes); ++mask) {
    Simplex s;
    for (int i = 0; i < axes; ++i) s.push_back(2 * i + ((mask >> i) & 1));
    facets.push_back(std::move(s));
  }
  return Nerve(2 * axes, facets);
}

namespace {

Nerve grid_nerve(int rows, int cols, bool twisted) {
  if (rows < 3 || cols < 3) throw DomainError("grid surface needs at least 3 rows and 3 columns");
  auto vertex = [&](int r, int c) {
    if (r == rows) {
      r = 0;
      if (twisted) c = (cols - c) % cols;
    }
    return r * cols + (c % cols);
  };
  std::vector<Simplex> triangles;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int p00 = vertex(r, c), p10 = vertex(r + 1, c), p01 = vertex(r, c + 1), p11 = vertex(r + 1, c + 1);
      triangles.push_back({p00, p10, p11});
      triangles.push_back({p00, p01, p11});
    }
  }
  return Nerve(rows * cols, triangles);
}

}  // namespace

Nerve torus_nerve(int rows, int cols) { return grid_nerve(rows, cols, false); }

Nerve klein_bottle_nerve(int rows, int cols) { return grid_nerve(rows, cols, true); }

std::vector<int> grid_rows(const std::vector<int>& rows, int cols) {
  std::vector<int> out;
  for (int r : rows) {
    for (int c = 0; c < cols; ++c) out.push_back(r * cols + c);
  }
  return out;
}

}  // namespace formcalc
