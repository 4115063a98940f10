#pragma once

#include <optional>
#include <string>
#include <vector>

#include "formcalc/form.hpp"
#include "formcalc/integration.hpp"
#include "formcalc/rational.hpp"

namespace formcalc {

using Simplex = std::vector<int>;

/// Nerve of a good cover: vertex i is the i-th open set, a simplex is a set of
/// open sets with nonempty (contractible) common intersection. The face
/// closure is completed on construction.
class Nerve {
 public:
  Nerve(int vertices, const std::vector<Simplex>& simplices);

  int vertex_count() const { return vertices_; }
  /// Highest simplex dimension, 0 for a discrete nerve.
  int top_degree() const { return static_cast<int>(by_degree_.size()) - 1; }
  /// Sorted k-simplices.
  const std::vector<Simplex>& simplices(int degree) const;
  std::size_t simplex_count() const;
  /// Alternating count of simplices.
  long euler_characteristic() const;

  /// Full subcomplex on a vertex subset, relabelled 0..m-1 in increasing order.
  Nerve full_subcomplex(const std::vector<int>& vertices) const;

 private:
  int vertices_;
  std::vector<std::vector<Simplex>> by_degree_;
};

/// Cech cochain complex over Q: delta_k maps C^k -> C^{k+1} with
/// (delta f)(s) = sum_i (-1)^i f(s without its i-th vertex).
struct CochainComplex {
  std::vector<long> dimensions;
  /// delta[k] has dimensions[k+1] rows and dimensions[k] columns.
  std::vector<std::vector<std::vector<Rational>>> delta;

  bool squares_to_zero() const;
};

CochainComplex cochain_complex(const Nerve& nerve);
std::vector<long> cech_cohomology(const Nerve& nerve);

/// Dimensions and ranks along the Mayer-Vietoris sequence of X = U u V, where
/// U and V are full subcomplexes of the nerve on the given vertex sets.
/// Index k refers to degree k; `sum` holds dim H^k(U) + dim H^k(V).
struct MayerVietorisData {
  std::vector<long> x;
  std::vector<long> u;
  std::vector<long> v;
  std::vector<long> sum;
  std::vector<long> intersection;
  std::vector<long> rank_i;  // H^k(X) -> H^k(U) + H^k(V)
  std::vector<long> rank_j;  // H^k(U) + H^k(V) -> H^k(U n V)
  std::vector<long> rank_d;  // H^k(U n V) -> H^{k+1}(X)
};

/// Ranks of i and j are computed from cocycle representatives; the rank of the
/// connecting map then follows from exactness at H^k(U n V).
MayerVietorisData mayer_vietoris_data(const Nerve& nerve, const std::vector<int>& u, const std::vector<int>& v);

/// A finite exact sequence 0 -> S_1 -> ... -> 0. Map m goes from slot m to
/// slot m + 1, so there is one fewer map than slots.
struct ExactSequenceProblem {
  std::vector<std::optional<long>> slots;
  std::vector<std::optional<long>> ranks;
};

enum class SolveStatus { Solved, UnderDetermined, Inconsistent };

struct ExactSequenceSolution {
  SolveStatus status;
  std::vector<std::optional<long>> slots;
  std::vector<std::optional<long>> ranks;
  std::string message;
};

ExactSequenceSolution mv_solve(const ExactSequenceProblem& problem);

enum class MvTerm { Space = 0, Sum = 1, Intersection = 2 };

/// Slot index of H^k(X), H^k(U)+H^k(V) or H^k(U n V) in the Mayer-Vietoris
/// sequence built by mayer_vietoris_problem. The map leaving a slot has the
/// same index.
int mv_slot(int degree, MvTerm term);

/// 0 -> H^0(X) -> H^0(U)+H^0(V) -> H^0(U n V) -> H^1(X) -> ... -> H^top(U n V) -> 0
/// with the sum and intersection dimensions filled in and everything else unknown.
ExactSequenceProblem mayer_vietoris_problem(const std::vector<long>& sum, const std::vector<long>& intersection);

/// Betti numbers of S^n from the Mayer-Vietoris sequence of the cover by two
/// contractible caps, recursing on the equator S^(n-1) down to S^0.
std::vector<long> sphere_betti(int n);

/// Connecting-map image of the class (a, b) in H^0(U n V) for the two-arc
/// cover of the unit circle: U the arc y < 1/2, V the arc y > -1/2,
/// U n V the components near (1, 0) and (-1, 0).
struct S1Generator {
  struct Piece {
    std::string region;            // overlap component
    DifferentialForm on_u;         // d(rho_V gamma) restricted to the component
    DifferentialForm on_v;         // -d(rho_U gamma) restricted to the component
    Cell arc;                      // the part of the circle where the form can be nonzero
  };
  std::vector<Piece> pieces;
  double integral;
  std::string note;

  /// Value of the generator on the unit tangent of the circle at angle theta.
  double density(double theta) const;
};

S1Generator s1_connecting_generator(const Rational& a = 1, const Rational& b = 0, const QuadratureSpec& spec = {});

/// rho_V on the cover above: cubic smoothstep in y rising from 0 at y = -1/10
/// to 1 at y = 1/10. Returns the polynomial valid on |y| <= 1/10 (y is axis 1).
ScalarExpr s1_partition_ramp();

struct KnownValue {
  std::string space;
  std::string group;
  long dimension;
  std::string statement;
};

std::vector<KnownValue> known_value_tables();
/// dim H^k_c(R^n).
long compactly_supported_dimension(int n, int k);

/// b_k = b_{n-k} for all k. Throws DomainError for non-orientable input.
bool poincare_duality_check(const std::vector<long>& betti, bool orientable = true);

/// Example nerves.
Nerve point_nerve();
/// Four arcs in a cycle.
Nerve circle_nerve();
/// Boundary of the (n+1)-dimensional cross-polytope: vertices 2i and 2i+1 are
/// the caps around +e_i and -e_i.
Nerve sphere_nerve(int n);
/// Triangulated rows x cols grid on the torus or, with a flip in the row
/// direction, on the Klein bottle. Vertex (r, c) has index r * cols + c.
Nerve torus_nerve(int rows = 6, int cols = 4);
Nerve klein_bottle_nerve(int rows = 6, int cols = 4);
/// Vertices of the given grid rows.
std::vector<int> grid_rows(const std::vector<int>& rows, int cols);

}  // namespace formcalc
