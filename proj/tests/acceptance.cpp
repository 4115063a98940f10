// Runs the ten acceptance checks and prints one line per check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "formcalc/cohomology.hpp"
#include "formcalc/geometry.hpp"
#include "formcalc/integration.hpp"
#include "formcalc/parser.hpp"
#include "formcalc/poincare.hpp"
#include "formcalc/tensor.hpp"
#include "oracles.hpp"

using namespace formcalc;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

Chain single(Cell c) {
  Chain chain;
  chain.add(1, std::move(c));
  return chain;
}

Cell hemisphere() {
  return Cell({{0, kPi / 2}, {0, 2 * kPi}}, parse_map("map(p,q) = sin(p)*cos(q); sin(p)*sin(q); cos(p)"));
}

Loop loop(const std::string& map) { return Loop(Cell({{0, 2 * kPi}}, parse_map(map))); }

double max_difference(const GenericTensor& a, const GenericTensor& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

GenericTensor random_tensor(oracle::Rng& rng, int n, int k) {
  GenericTensor t(n, k);
  for (double& c : t.data()) c = rng.real(-1.0, 1.0);
  return t;
}

void symbolic_example(Verdict& v) {
  const DifferentialForm w = exterior_derivative(parse_form("x*y*dx + exp(x)*dy", 2));
  const DifferentialForm expected = parse_form("(exp(x) - x)*dx/\\dy", 2);
  v.require(w == expected, "d(xy dx + e^x dy) == (e^x - x) dx^dy");
  v.require(w.to_string() == "(exp(x) - x)*dx/\\dy", "normal form text");
  v.detail << w.to_string();
}

void property_suite(Verdict& v) {
  oracle::Rng rng(1001);
  int failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(1, 4);
    const int k = rng.integer(0, n), l = rng.integer(0, n), m = rng.integer(0, n);
    const DifferentialForm a = oracle::form(rng, n, k, 3);
    const DifferentialForm b = oracle::form(rng, n, l, 3);
    const DifferentialForm c = oracle::form(rng, n, m, 3);
    if (!exterior_derivative(exterior_derivative(a)).is_zero()) ++failures;
    const DifferentialForm leibniz = exterior_derivative(wedge(a, b)) - wedge(exterior_derivative(a), b) -
                                     (k % 2 ? -1 : 1) * wedge(a, exterior_derivative(b));
    if (!leibniz.is_zero()) ++failures;
    if (!(wedge(b, a) - ((k * l) % 2 ? -1 : 1) * wedge(a, b)).is_zero()) ++failures;
    if (!(wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).is_zero()) ++failures;
  }
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(1, 4), m = rng.integer(1, 4), p = rng.integer(1, 4);
    const SmoothMap g = oracle::polynomial_map(rng, n, m, 3);
    const SmoothMap h = oracle::polynomial_map(rng, m, p, 3);
    const DifferentialForm a = oracle::form(rng, p, rng.integer(0, p), 3);
    const DifferentialForm b = oracle::form(rng, m, rng.integer(0, m), 3);
    if (!(pullback_form(compose(h, g), a) - pullback_form(g, pullback_form(h, a))).is_zero()) ++failures;
    if (!(pullback_form(g, exterior_derivative(b)) - exterior_derivative(pullback_form(g, b))).is_zero()) ++failures;
  }
  v.require(failures == 0, std::to_string(failures) + " identities");
  v.detail << "1200 identities, " << failures << " nonzero";
}

void closedness(Verdict& v) {
  v.require(is_closed(angular_form()), "angular form closed");
  v.require(is_closed(solid_angle_form()), "solid-angle form closed");
  v.require(exterior_derivative(angular_form()).is_zero(), "d(angular) == 0");
  v.require(exterior_derivative(solid_angle_form()).is_zero(), "d(solid angle) == 0");
  v.detail << "d(angular) = 0, d(solid angle) = 0";
}

void periods(Verdict& v) {
  const double circle = integrate_cell(parse_form("x*dy - y*dx", 2), unit_circle_cell(), {32});
  const double sphere = integrate_cell(parse_form("x*dy/\\dz + y*dz/\\dx + z*dx/\\dy", 3), sphere_cell(), {32});
  v.require(std::abs(circle - 2 * kPi) <= 1e-8, "circle period");
  v.require(std::abs(sphere - 4 * kPi) <= 1e-6, "sphere period");
  v.detail << "circle error " << std::abs(circle - 2 * kPi) << ", sphere error " << std::abs(sphere - 4 * kPi);
}

void stokes(Verdict& v) {
  const StokesResult ftc = stokes_check(parse_form("x^3 + x", 1), interval_cell(0, 1));
  const StokesResult green = stokes_check(parse_form("x*dy", 2), disk_cell());
  const StokesResult kelvin = stokes_check(parse_form("y*z*dx - x*dy + x^2*dz", 3), hemisphere());
  const HemisphereTransfer transfer =
      hemisphere_transfer_check(parse_form("(x^2 + y^2)*dx/\\dy + (x + y*exp(z))*dy/\\dz + exp(x)*dx/\\dz", 3));
  v.require(ftc.residual <= 1e-8, "FTC");
  v.require(green.residual <= 1e-8 && std::abs(green.lhs - kPi) <= 1e-8 && std::abs(green.rhs - kPi) <= 1e-8, "Green");
  v.require(kelvin.residual <= 1e-8, "Kelvin-Stokes");
  v.require(transfer.residual <= 1e-6, "hemisphere transfer");
  v.detail << "residuals " << ftc.residual << ", " << green.residual << ", " << kelvin.residual << ", " << transfer.residual;
}

void tensors(Verdict& v) {
  oracle::Rng rng(1006);
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.integer(1, 4), k = rng.integer(1, 3);
    const GenericTensor t = random_tensor(rng, n, k);
    const GenericTensor at = alt(t);
    worst = std::max(worst, max_difference(alt(at), at));
    const GenericTensor b = random_tensor(rng, n, rng.integer(0, 2));
    const GenericTensor sym = tensor_product(GenericTensor::coordinate(n, 0), GenericTensor::coordinate(n, 0));
    const GenericTensor killed = alt(tensor_product(sym, b));
    worst = std::max(worst, max_difference(killed, GenericTensor(n, killed.degree())));
  }
  v.require(worst < 1e-12, "Alt idempotent and kills products");

  for (int k = 1; k <= 5; ++k)
    for (int l = 1; l <= 5; ++l)
      for (int m = 1; m <= 5; ++m) {
        const double lhs = wedge_constant(k, l) * wedge_constant(k + l, m);
        const double rhs = wedge_constant(l, m) * wedge_constant(k, l + m);
        v.require(std::abs(lhs - rhs) <= 1e-12 * lhs, "C identity");
      }

  double det_error = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(3, 5), k = rng.integer(1, std::min(n, 4));
    const Eigen::MatrixXd covectors = rng.matrix(k, n), vectors = rng.matrix(n, k);
    det_error = std::max(det_error, std::abs(covector_wedge_det(covectors, vectors).wedge - oracle::leibniz_det(covectors * vectors)));
  }
  v.require(det_error <= 1e-10, "wedge equals determinant");

  double basis_error = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.integer(1, 5), k = rng.integer(1, n);
    const MultiIndex index = rng.subset(n, k);
    GenericTensor product = GenericTensor::scalar(n, 1.0);
    for (int i : index) product = tensor_product(product, GenericTensor::coordinate(n, i));
    GenericTensor scaled = alt(product);
    for (double& c : scaled.data()) c *= static_cast<double>(oracle::factorial(k));
    basis_error = std::max(basis_error, max_difference(AltTensor::basis(n, index).expand(), scaled));
  }
  v.require(basis_error < 1e-12, "phi^I = k! Alt(phi~^I)");

  double pull_error = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int m = rng.integer(1, 4), n = rng.integer(1, 4), k = rng.integer(1, 3);
    const Eigen::MatrixXd l = rng.matrix(m, n);
    const GenericTensor t = random_tensor(rng, m, k);
    std::vector<Eigen::VectorXd> vs, images;
    for (int i = 0; i < k; ++i) {
      vs.push_back(rng.matrix(n, 1).col(0));
      images.push_back(l * vs.back());
    }
    pull_error = std::max(pull_error, std::abs(pullback_linear(l, t).evaluate(vs) - t.evaluate(images)));
    const Eigen::MatrixXd b = rng.matrix(n, rng.integer(1, 4));
    pull_error = std::max(pull_error, max_difference(pullback_linear(b, pullback_linear(l, t)), pullback_linear(l * b, t)));
  }
  v.require(pull_error < 1e-10, "pullback transpose law");
  v.detail << "wedge-det error " << det_error << ", pullback error " << pull_error;
}

void poincare(Verdict& v) {
  oracle::Rng rng(1007);
  int primitives = 0, identities = 0, bad = 0;
  while (primitives < 50) {
    const int n = rng.integer(2, 4), k = rng.integer(1, n);
    const DifferentialForm closed = exterior_derivative(oracle::form(rng, n, k - 1, 3));
    if (closed.is_zero()) continue;
    if (!(exterior_derivative(primitive(closed)) - closed).is_zero()) ++bad;
    ++primitives;
  }
  for (; identities < 50; ++identities) {
    const int n = rng.integer(1, 4);
    if (!homotopy_identity_check(oracle::form(rng, n, rng.integer(0, n), 3)).is_zero()) ++bad;
  }
  v.require(bad == 0, std::to_string(bad) + " nonzero residuals");
  v.detail << primitives << " primitives, " << identities << " homotopy identities, " << bad << " nonzero";
}

void cohomology(Verdict& v) {
  for (int n = 1; n <= 5; ++n) {
    std::vector<long> expected(static_cast<std::size_t>(n + 1), 0);
    expected.front() = expected.back() = 1;
    v.require(sphere_betti(n) == expected, "sphere_betti(" + std::to_string(n) + ")");
    v.require(poincare_duality_check(sphere_betti(n)), "sphere palindrome");
  }
  const ExactSequenceSolution circle = mv_solve({{0, 1, 2, 2, std::nullopt, 0}, std::vector<std::optional<long>>(5)});
  v.require(circle.status == SolveStatus::Solved && circle.slots[1] == 1 && circle.slots[4] == 1, "two-arc circle sequence");
  v.require(cech_cohomology(circle_nerve()) == std::vector<long>{1, 1}, "circle nerve");
  const S1Generator g = s1_connecting_generator();
  v.require(std::abs(g.integral - 1.0) <= 1e-8, "connecting generator integral");
  const std::vector<long> torus = cech_cohomology(torus_nerve());
  v.require(torus == std::vector<long>{1, 2, 1}, "torus nerve");
  v.require(poincare_duality_check(torus), "torus palindrome");
  const std::vector<long> klein = cech_cohomology(klein_bottle_nerve());
  v.require(klein.size() == 3 && klein[1] == 1 && klein[2] == 0, "Klein bottle");

  const MayerVietorisData kd = mayer_vietoris_data(klein_bottle_nerve(), grid_rows({0, 1, 2, 3}, 4), grid_rows({3, 4, 5, 0}, 4));
  ExactSequenceProblem kp = mayer_vietoris_problem(kd.sum, kd.intersection);
  kp.slots[static_cast<std::size_t>(mv_slot(0, MvTerm::Space))] = 1;
  kp.ranks[static_cast<std::size_t>(mv_slot(1, MvTerm::Sum))] = 2;
  const ExactSequenceSolution ks = mv_solve(kp);
  v.require(ks.status == SolveStatus::Solved && ks.slots[static_cast<std::size_t>(mv_slot(1, MvTerm::Space))] == 1 &&
                ks.slots[static_cast<std::size_t>(mv_slot(2, MvTerm::Space))] == 0,
            "Klein bottle sequence");
  v.detail << "torus (" << torus[0] << "," << torus[1] << "," << torus[2] << "), Klein (" << klein[0] << "," << klein[1]
           << "," << klein[2] << "), generator " << g.integral;
}

void degrees(Verdict& v) {
  double worst = 0;
  for (int k = -2; k <= 3; ++k) {
    const IntegerEstimate w = winding_number(loop("map(t) = cos(" + std::to_string(k) + "*t); sin(" + std::to_string(k) + "*t)"));
    v.require(w.rounded == k, "winding " + std::to_string(k));
    worst = std::max(worst, std::abs(w.value - k));
  }
  const IntegerEstimate offset = winding_number(loop("map(t) = 2 + cos(t); sin(t)"));
  v.require(offset.rounded == 0, "offset loop");
  worst = std::max(worst, offset.gap());
  v.require(worst <= 1e-6, "winding accuracy");
  const Loop a = loop("map(t) = cos(t); sin(t); 0*t");
  const IntegerEstimate linked = linking_number(a, loop("map(t) = 1 + cos(t); 0*t; sin(t)"));
  const IntegerEstimate apart = linking_number(a, loop("map(t) = 5 + cos(t); 0*t; sin(t)"));
  v.require(std::abs(linked.rounded) == 1 && linked.gap() <= 1e-3, "linked pair");
  v.require(apart.rounded == 0 && apart.gap() <= 1e-3, "unlinked pair");
  v.detail << "winding error " << worst << ", linking " << linked.value << ", unlinked " << apart.value;
}

void gauss_bonnet(Verdict& v) {
  const GaussBonnetResult sphere = gauss_bonnet_check(single(sphere_cell()), 2);
  const GaussBonnetResult torus = gauss_bonnet_check(single(torus_cell()), 0, {16, 2});
  const GaussBonnetResult ellipsoid = gauss_bonnet_check(single(ellipsoid_cell(1.2, 1.0, 0.8)), 2, {16, 2});
  const double area = HypersurfaceVolumeForm(sphere_cell()).integrate();
  v.require(sphere.residual <= 1e-4, "sphere");
  v.require(torus.residual <= 1e-4, "torus");
  v.require(ellipsoid.residual <= 1e-3, "ellipsoid");
  v.require(std::abs(area - 4 * kPi) <= 1e-6, "sphere area");
  v.detail << "residuals " << sphere.residual << ", " << torus.residual << ", " << ellipsoid.residual << ", area error "
           << std::abs(area - 4 * kPi);
}

struct Criterion {
  const char* name;
  double budget_ms;
  std::function<void(Verdict&)> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"symbolic worked example", 1, symbolic_example},
      {"property suite", 10000, property_suite},
      {"closedness certificates", 100, closedness},
      {"periods", 2000, periods},
      {"Stokes residuals", 5000, stokes},
      {"tensor suite", 5000, tensors},
      {"Poincare lemma", 10000, poincare},
      {"cohomology tables", 10000, cohomology},
      {"degree suite", 10000, degrees},
      {"Gauss-Bonnet", 10000, gauss_bonnet},
  };
  // Warm-up.
  (void)parse_form("x*dy", 2);
  (void)gauss_legendre(16);

  int failed = 0;
  int number = 0;
  for (const Criterion& c : criteria) {
    ++number;
    Verdict v;
    v.detail.precision(3);
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = ms <= c.budget_ms;
    const bool pass = v.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s %2d %-24s %10.3f ms (budget %g ms)%s  %s\n", pass ? "PASS" : "FAIL", number, c.name, ms, c.budget_ms,
                in_time ? "" : " over budget", v.detail.str().c_str());
  }
  std::printf("%d of %d criteria passed\n", number - failed, number);
  return failed == 0 ? 0 : 1;
}
