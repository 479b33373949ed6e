#pragma once

// The integer chain complex C0 -> C1 -> J -> C1 -> C0 of a triangulation and
// combinatorial flattenings solved over Z. The solution gives an element of
// the extended pre-Bloch group.

#include <complex>
#include <string>
#include <vector>

#include "ebloch/extended_bloch.hpp"
#include "ebloch/ideal_geometry.hpp"
#include "ebloch/integer_matrix.hpp"
#include "ebloch/triangulation.hpp"

namespace ebloch {

/// J has basis (e0, e1) per tetrahedron: coordinate 2j is e0 of tetrahedron
/// j, 2j+1 is e1. e_i stands for the edge pair i mod 3, e2 = -e0 - e1.
struct JComplex {
  int tetrahedra = 0;
  int edges = 0;
  int vertices = 0;
  IntMatrix alpha;       // C0 -> C1, edges x vertices
  IntMatrix beta;        // C1 -> J, 2n x edges
  IntMatrix beta_star;   // J -> C1, edges x 2n
  IntMatrix alpha_star;  // C1 -> C0, vertices x edges
  std::vector<int> signs;
  std::vector<int> valences;

  /// Skew form on J: <e0, e1> = 1 in every tetrahedron.
  static std::int64_t form(const IntVector& a, const IntVector& b);
  /// Largest absolute entry over the three composites.
  bool composites_vanish() const;
};

JComplex build_j_complex(const Triangulation& t);

/// Component -(Log(1 - x) e0 + Log(x) e1) per tetrahedron.
Eigen::VectorXcd omega(const std::vector<std::complex<double>>& shapes);

/// xi(w) = w1 e0 - w0 e1 for one flattening, as (e0, e1) coefficients.
std::array<std::complex<double>, 2> xi(const Flattening& w);

/// (1 / pi i) beta*(omega), rounded. Throws ConsistencyError when an entry
/// is farther than tol from an integer.
IntVector integral_defect(const JComplex& jc, const std::vector<std::complex<double>>& shapes,
                          double tol = 1e-9);

/// H5 .. H1: homology at C0, C1, J, C1, C0 in that order.
std::array<AbelianGroup, 5> homology_of_j(const JComplex& jc);

/// dim H1(K; Z/2) from the cellular chain complex of K over F2.
int h1_mod2_dimension(const Triangulation& t);

struct PathReport {
  std::string label;
  std::complex<double> log_parameter;  // numeric value
  std::int64_t pi_multiple = 0;        // log_parameter / pi i, rounded
  int parity = 0;
  bool vertex_link = false;
};

struct FlatteningAssignment {
  std::vector<ExtendedParam> params;
  std::vector<int> signs;
  std::vector<PathReport> edges;
  std::vector<PathReport> paths;
  /// Kernel of the integer system restricted to (p_0, q_0, p_1, q_1, ...):
  /// adding any column gives another valid assignment.
  IntMatrix kernel;
  bool edge_flattened_only = false;
  std::vector<std::string> warnings;

  /// Every reported log-parameter is 0 (within tol) and every parity 0.
  bool conditions_hold(double tol = 1e-9) const;
};

/// Log-parameters and parities of the edge loops and cusp paths for a given
/// choice of (z_j; p_j, q_j).
void fill_report(const Triangulation& t, FlatteningAssignment& a);

/// Solves for (p_j, q_j) over Z so that every edge loop and every supplied
/// cusp path has log-parameter 0 and parity 0. Throws IntegerSystemError when
/// the system has no integer solution.
FlatteningAssignment solve_flattenings(const Triangulation& t,
                                       const std::vector<std::complex<double>>& shapes);

/// Replaces (p, q) and recomputes the report.
FlatteningAssignment with_indices(const Triangulation& t, const FlatteningAssignment& a,
                                  const IntVector& pq);

/// sum_j epsilon_j [z_j, p_j, q_j] in EP mode.
EBElement fundamental_element(const FlatteningAssignment& a);

struct ComplexVolume {
  ModPiSquared r;
  double volume = 0.0;
  /// -Re R, in (-pi^2/2, pi^2/2].
  double cs = 0.0;
};

ComplexVolume complex_volume(const EBElement& e);

/// x reduced into (-m/2, m/2].
double centered_mod(double x, double m);

// ---------------------------------------------------------------------------
// Simplices around an edge.

/// One simplex of a cycle around an edge E. The edges of the face shared
/// with the next simplex are E, T (top) and B (bottom); only their edge pairs
/// matter here.
struct CycleSimplex {
  ExtendedParam param;
  int sign = 1;
  int top_pair = 0;
  int bottom_pair = 1;
  int edge_pair() const { return 3 - top_pair - bottom_pair; }
};

struct CycleCheck {
  EBElement original;
  EBElement primed;
  double r_residual = 0.0;
  bool nu_equal = false;
  bool holds(double tol = 1e-9) const { return r_residual <= tol && nu_equal; }
};

/// Adds sign * pi i at T (and its opposite edge) and subtracts it at B.
ExtendedParam primed_param(const CycleSimplex& s);

/// Throws ContractViolation unless the signed log-parameter and parity sums
/// around E vanish.
CycleCheck cycle_relation_check(const std::vector<CycleSimplex>& simplices,
                                const SymbolBasis& basis, double tol = 1e-9);

/// Delta_j omits vertex j of a five-point configuration, j = 0, 1, 2, around
/// E = v3 v4; p2 = p1 - p0.
std::vector<CycleSimplex> three_simplex_cycle(std::complex<double> x, std::complex<double> y,
                                              std::int64_t p0, std::int64_t p1, std::int64_t q0,
                                              std::int64_t q1, std::int64_t q2);

/// (z0, z1, z2, z3) and (z0, z1, z3, z2) folded around E = z0 z1: shapes x
/// and 1/x, indices (p, q1) and (-p, q2).
std::vector<CycleSimplex> folded_cycle(std::complex<double> x, std::int64_t p, std::int64_t q1,
                                       std::int64_t q2);

}  // namespace ebloch
