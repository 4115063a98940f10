#include "doctest.h"

#include <cmath>
#include <numbers>
#include <numeric>

#include "formcalc/cohomology.hpp"
#include "formcalc/error.hpp"

using namespace formcalc;

namespace {

long alternating_sum(const std::vector<long>& v) {
  long s = 0;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k % 2 ? -1 : 1) * v[k];
  return s;
}

long alternating_sum(const std::vector<std::optional<long>>& v) {
  long s = 0;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k % 2 ? -1 : 1) * v[k].value();
  return s;
}

std::vector<int> all_but(int count, std::initializer_list<int> skip) {
  std::vector<int> out;
  for (int i = 0; i < count; ++i)
    if (std::find(skip.begin(), skip.end(), i) == skip.end()) out.push_back(i);
  return out;
}

std::optional<long> slot(const ExactSequenceSolution& s, int degree, MvTerm term) {
  return s.slots[static_cast<std::size_t>(mv_slot(degree, term))];
}

}  // namespace

TEST_CASE("nerves") {
  const Nerve n(3, {{0, 1, 2}});
  CHECK(n.simplices(0).size() == 3);
  CHECK(n.simplices(1).size() == 3);
  CHECK(n.simplices(2).size() == 1);
  CHECK(n.simplex_count() == 7);
  CHECK(n.top_degree() == 2);
  CHECK_THROWS_AS(Nerve(2, {{0, 2}}), InputError);
  CHECK_THROWS_AS(Nerve(0, {}), InputError);
  CHECK(torus_nerve().simplex_count() <= 200);
  CHECK(klein_bottle_nerve().simplex_count() <= 200);
}

TEST_CASE("Cech cohomology") {
  CHECK(cech_cohomology(point_nerve()) == std::vector<long>{1});
  CHECK(cech_cohomology(Nerve(3, {{0, 1, 2}})) == std::vector<long>{1, 0, 0});
  CHECK(cech_cohomology(circle_nerve()) == std::vector<long>{1, 1});
  CHECK(cech_cohomology(torus_nerve()) == std::vector<long>{1, 2, 1});
  CHECK(cech_cohomology(torus_nerve(5, 5)) == std::vector<long>{1, 2, 1});
  const std::vector<long> klein = cech_cohomology(klein_bottle_nerve());
  CHECK(klein == std::vector<long>{1, 1, 0});
  CHECK(cech_cohomology(Nerve(4, {{0, 1}, {2, 3}})) == std::vector<long>{2, 0});
  for (int n = 1; n <= 5; ++n) CHECK(cech_cohomology(sphere_nerve(n)) == sphere_betti(n));

  for (const Nerve& nerve : {point_nerve(), circle_nerve(), torus_nerve(), klein_bottle_nerve(), sphere_nerve(3)}) {
    CHECK(cochain_complex(nerve).squares_to_zero());
    CHECK(alternating_sum(cech_cohomology(nerve)) == nerve.euler_characteristic());
  }
  CHECK(torus_nerve().euler_characteristic() == 0);
  CHECK(sphere_nerve(2).euler_characteristic() == 2);
}

TEST_CASE("exact sequence solver") {
  ExactSequenceProblem circle{{0, 1, 2, 2, std::nullopt, 0}, {}};
  circle.ranks.assign(5, std::nullopt);
  const ExactSequenceSolution s = mv_solve(circle);
  CHECK(s.status == SolveStatus::Solved);
  CHECK(s.slots[4] == 1);
  CHECK(alternating_sum(s.slots) == 0);

  const MayerVietorisData torus = mayer_vietoris_data(torus_nerve(), grid_rows({0, 1, 2, 3}, 4), grid_rows({3, 4, 5, 0}, 4));
  CHECK(torus.x == std::vector<long>{1, 2, 1});
  ExactSequenceProblem dims_only = mayer_vietoris_problem(torus.sum, torus.intersection);
  dims_only.slots[static_cast<std::size_t>(mv_slot(0, MvTerm::Space))] = 1;
  CHECK(mv_solve(dims_only).status == SolveStatus::UnderDetermined);
  ExactSequenceProblem with_rank = dims_only;
  with_rank.ranks[static_cast<std::size_t>(mv_slot(1, MvTerm::Sum))] = torus.rank_j[1];
  const ExactSequenceSolution ts = mv_solve(with_rank);
  REQUIRE(ts.status == SolveStatus::Solved);
  CHECK(slot(ts, 1, MvTerm::Space) == 2);
  CHECK(slot(ts, 2, MvTerm::Space) == 1);

  const MayerVietorisData klein = mayer_vietoris_data(klein_bottle_nerve(), grid_rows({0, 1, 2, 3}, 4), grid_rows({3, 4, 5, 0}, 4));
  CHECK(klein.rank_j[1] == 2);
  ExactSequenceProblem kp = mayer_vietoris_problem(klein.sum, klein.intersection);
  kp.slots[static_cast<std::size_t>(mv_slot(0, MvTerm::Space))] = 1;
  CHECK(mv_solve(kp).status == SolveStatus::UnderDetermined);
  kp.ranks[static_cast<std::size_t>(mv_slot(1, MvTerm::Sum))] = 2;
  const ExactSequenceSolution ks = mv_solve(kp);
  REQUIRE(ks.status == SolveStatus::Solved);
  CHECK(slot(ks, 1, MvTerm::Space) == 1);
  CHECK(slot(ks, 2, MvTerm::Space) == 0);
  CHECK(alternating_sum(ks.slots) == 0);

  ExactSequenceProblem bad{{0, 1, 0}, {std::nullopt, std::nullopt}};
  CHECK(mv_solve(bad).status == SolveStatus::Inconsistent);
  ExactSequenceProblem rank_too_big{{0, 1, 1, 0}, {std::nullopt, 2, std::nullopt}};
  CHECK(mv_solve(rank_too_big).status == SolveStatus::Inconsistent);
}

TEST_CASE("Mayer-Vietoris on Cech data reproduces the spheres") {
  for (int n = 1; n <= 3; ++n) {
    const Nerve sphere = sphere_nerve(n);
    const int top = 2 * n + 1;
    const MayerVietorisData d = mayer_vietoris_data(sphere, all_but(top + 1, {top}), all_but(top + 1, {top - 1}));
    ExactSequenceProblem p = mayer_vietoris_problem(d.sum, d.intersection);
    p.slots[static_cast<std::size_t>(mv_slot(0, MvTerm::Space))] = 1;
    const ExactSequenceSolution s = mv_solve(p);
    REQUIRE(s.status == SolveStatus::Solved);
    const std::vector<long> expected = sphere_betti(n);
    for (int k = 0; k <= n; ++k) CHECK(slot(s, k, MvTerm::Space) == expected[static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("sphere Betti numbers") {
  CHECK(sphere_betti(1) == std::vector<long>{1, 1});
  CHECK(sphere_betti(2) == std::vector<long>{1, 0, 1});
  CHECK(sphere_betti(3) == std::vector<long>{1, 0, 0, 1});
  CHECK(sphere_betti(5) == std::vector<long>{1, 0, 0, 0, 0, 1});
  CHECK(sphere_betti(0) == std::vector<long>{2});
}

TEST_CASE("connecting map generator on the circle") {
  const S1Generator g = s1_connecting_generator();
  CHECK(std::abs(g.integral - 1.0) <= 1e-8);
  CHECK(g.pieces.size() == 2);
  for (int i = 0; i <= 400; ++i) {
    const double theta = 2 * std::numbers::pi * i / 400;
    if (std::cos(theta) < 0.9) CHECK(g.density(theta) == 0.0);
  }
  CHECK(g.density(0.0) != 0.0);
  const S1Generator image = s1_connecting_generator(1, 1);
  CHECK(std::abs(image.integral) <= 1e-8);
  const S1Generator other = s1_connecting_generator(0, 1);
  CHECK(std::abs(other.integral + 1.0) <= 1e-8);
  CHECK_FALSE(g.note.empty());

  const ScalarExpr ramp = s1_partition_ramp();
  const std::vector<double> low{0.0, -0.1}, mid{0.0, 0.0}, high{0.0, 0.1};
  CHECK(evaluate(ramp, low) == doctest::Approx(0.0));
  CHECK(evaluate(ramp, mid) == doctest::Approx(0.5));
  CHECK(evaluate(ramp, high) == doctest::Approx(1.0));
  CHECK(evaluate(differentiate(ramp, 1), low) == doctest::Approx(0.0));
  CHECK(evaluate(differentiate(ramp, 1), high) == doctest::Approx(0.0));
}

TEST_CASE("known values and duality") {
  bool compact_r2 = false, orientable_top = false, connected = false;
  for (const KnownValue& k : known_value_tables()) {
    if (k.space == "R^2" && k.group == "H^2_c") compact_r2 = k.dimension == 1;
    if (k.space == "compact connected orientable n-manifold" && k.group == "H^n") orientable_top = k.dimension == 1;
    if (k.space == "connected manifold" && k.group == "H^0") connected = k.dimension == 1;
  }
  CHECK(compact_r2);
  CHECK(orientable_top);
  CHECK(connected);
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= n; ++k) CHECK(compactly_supported_dimension(n, k) == (k == n ? 1 : 0));

  CHECK(poincare_duality_check({1, 2, 1}));
  CHECK(poincare_duality_check({1, 0, 1}));
  CHECK(poincare_duality_check(cech_cohomology(torus_nerve())));
  for (int n = 1; n <= 5; ++n) CHECK(poincare_duality_check(sphere_betti(n)));
  CHECK_FALSE(poincare_duality_check({1, 1, 0}));
  CHECK_THROWS_AS(poincare_duality_check({1, 1, 0}, false), DomainError);
}
