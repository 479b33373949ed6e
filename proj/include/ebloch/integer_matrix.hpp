#pragma once

// Exact integer linear algebra on small dense matrices. Hermite and Smith
// normal forms drive the solvers and the homology of a two-map segment.
// Entries are int64; every arithmetic step is overflow checked and throws
// IntegerSystemError instead of wrapping.

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ebloch/errors.hpp"

namespace ebloch {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

namespace checked {
std::int64_t add(std::int64_t a, std::int64_t b);
std::int64_t sub(std::int64_t a, std::int64_t b);
std::int64_t mul(std::int64_t a, std::int64_t b);
/// Floor division, b != 0.
std::int64_t floor_div(std::int64_t a, std::int64_t b);
}  // namespace checked

/// Overflow-checked product.
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntVector multiply(const IntMatrix& a, const IntVector& x);

/// Column-style Hermite normal form: A * U = H with U unimodular and H in
/// lower column echelon form. Pivots are positive, entries left of a pivot
/// lie in [0, pivot). pivot_rows[k] is the row of the pivot in column k.
struct HermiteForm {
  IntMatrix h;
  IntMatrix u;
  std::vector<Eigen::Index> pivot_rows;
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_rows.size()); }
};

HermiteForm column_hermite(const IntMatrix& a);

/// Nonzero invariant factors d_1 | d_2 | ... (all positive).
std::vector<std::int64_t> smith_invariants(const IntMatrix& a);

Eigen::Index integer_rank(const IntMatrix& a);
Eigen::Index rank_mod2(const IntMatrix& a);

/// Basis of {x : A x = 0} as columns, in Hermite form (a canonical basis of
/// the kernel lattice).
IntMatrix integer_kernel(const IntMatrix& a);

/// Reduces x modulo the lattice spanned by the columns of a Hermite-form
/// basis, giving the unique representative whose pivot coordinates lie in
/// [0, pivot).
IntVector reduce_modulo_lattice(IntVector x, const IntMatrix& hermite_basis);

/// Integer solution of A x = b, canonical within its coset of ker A, or
/// nullopt when none exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

/// Z^r + sum Z/d_i.
struct AbelianGroup {
  Eigen::Index free_rank = 0;
  std::vector<std::int64_t> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// ker(B) / im(A) for X --A--> Y --B--> Z. Empty matrices stand for zero maps;
/// dim_y fixes the middle dimension. Throws ContractViolation unless B A = 0.
AbelianGroup homology_at(const IntMatrix& a, const IntMatrix& b, Eigen::Index dim_y);

}  // namespace ebloch
