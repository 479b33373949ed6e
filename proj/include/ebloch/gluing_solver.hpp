#pragma once

// Edge and cusp equations in logarithmic form and a Newton solver for them.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ebloch/triangulation.hpp"

namespace ebloch {

/// One equation sum_j (a_j Log z_j + b_j Log(1 - z_j)) + c pi i = target.
struct GluingRow {
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;
  std::int64_t c = 0;
  std::complex<double> target;
  std::string label;
};

struct GluingSystem {
  int unknowns = 0;
  std::vector<GluingRow> rows;
  int edge_rows = 0;
  int cusp_rows = 0;
  /// No cusp paths were supplied.
  bool edge_only = false;

  std::vector<std::complex<double>> evaluate(const std::vector<std::complex<double>>& z) const;
  double max_residual(const std::vector<std::complex<double>>& z) const;
};

/// Edge rows sum epsilon_j Log(edge parameter) = 2 pi i; cusp rows sum the
/// rotation-signed Log(edge parameter) = 0. Log z'' is expanded as
/// Log(1-z) - Log z + epsilon_j pi i, which is exact on the geometric side
/// sign(Im z_j) = epsilon_j.
GluingSystem gluing_equations(const Triangulation& t);

struct SolveOptions {
  double tolerance = 1e-12;
  int max_iter = 100;
};

struct ShapeSolution {
  std::vector<std::complex<double>> shapes;
  int iterations = 0;
  double residual = 0.0;
  /// Every shape on the side fixed by its orientation sign.
  bool geometric = false;
  std::vector<std::string> warnings;
};

/// Default starting point: 0.5 + 0.8i, conjugated for negatively oriented
/// tetrahedra.
std::vector<std::complex<double>> default_initial_shapes(const Triangulation& t);

/// Gauss-Newton with least-squares steps and step halving. Throws
/// DegenerateError when an iterate gets within 1e-10 of the real line and
/// ConvergenceError after max_iter steps.
ShapeSolution solve_shapes(const Triangulation& t,
                           std::optional<std::vector<std::complex<double>>> initial = std::nullopt,
                           const SolveOptions& options = {});

/// Shapes seen from a fixed orientation: conjugated on negatively oriented
/// tetrahedra, so a geometric solution lies in the upper half plane.
std::vector<std::complex<double>> geometric_shapes(const Triangulation& t,
                                                   const std::vector<std::complex<double>>& shapes);

}  // namespace ebloch
