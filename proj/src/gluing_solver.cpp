#include "ebloch/gluing_solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "ebloch/polylog.hpp"

namespace ebloch {

namespace {

constexpr double kDegenerateMargin = 1e-10;
const std::complex<double> kPiI(0.0, std::numbers::pi);

// m * Log(parameter of the given edge pair) added to a row.
void add_incidence(GluingRow& row, int tet, int pair, std::int64_t m, int eps) {
  const auto j = static_cast<std::size_t>(tet);
  switch (pair) {
    case 0:
      row.a[j] += m;
      break;
    case 1:
      row.b[j] -= m;
      break;
    default:
      row.a[j] -= m;
      row.b[j] += m;
      row.c += m * eps;
      break;
  }
}

void check_degenerate(const std::vector<std::complex<double>>& z) {
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (std::abs(z[j].imag()) < kDegenerateMargin) {
      throw DegenerateError("shape " + std::to_string(j) + " is flat (|Im z| < 1e-10)");
    }
  }
}

double max_abs(const std::vector<std::complex<double>>& v) {
  double m = 0.0;
  for (auto x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<std::complex<double>> GluingSystem::evaluate(
    const std::vector<std::complex<double>>& z) const {
  std::vector<std::complex<double>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    std::complex<double> s = static_cast<double>(row.c) * kPiI - row.target;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (row.a[j] != 0) s += static_cast<double>(row.a[j]) * principal_log(z[j]);
      if (row.b[j] != 0) s += static_cast<double>(row.b[j]) * principal_log(1.0 - z[j]);
    }
    out.push_back(s);
  }
  return out;
}

double GluingSystem::max_residual(const std::vector<std::complex<double>>& z) const {
  return max_abs(evaluate(z));
}

GluingSystem gluing_equations(const Triangulation& t) {
  const auto eps = orientation_signs(t);
  const auto n = static_cast<std::size_t>(t.size());
  GluingSystem sys;
  sys.unknowns = t.size();
  const auto classes = edge_classes(t);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    GluingRow row{std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0), 0,
                  2.0 * kPiI, "edge " + std::to_string(k)};
    for (const auto& inc : classes[k].incidences) {
      const int e = eps[static_cast<std::size_t>(inc.tet)];
      add_incidence(row, inc.tet, inc.pair, e, e);
    }
    sys.rows.push_back(std::move(row));
  }
  sys.edge_rows = static_cast<int>(classes.size());
  for (std::size_t k = 0; k < t.cusp_paths.size(); ++k) {
    const PathPasses passes = path_passes(t, t.cusp_paths[k]);
    if (!passes.in_vertex_link()) continue;
    GluingRow row{std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0), 0,
                  {0.0, 0.0}, "cusp path " + std::to_string(k)};
    for (const auto& pe : passes.edges) {
      add_incidence(row, pe.tet, pe.pair, pe.rotation, eps[static_cast<std::size_t>(pe.tet)]);
    }
    sys.rows.push_back(std::move(row));
    ++sys.cusp_rows;
  }
  sys.edge_only = t.cusp_paths.empty();
  return sys;
}

std::vector<std::complex<double>> default_initial_shapes(const Triangulation& t) {
  const auto eps = orientation_signs(t);
  std::vector<std::complex<double>> out;
  for (int e : eps) out.emplace_back(0.5, 0.8 * e);
  return out;
}

ShapeSolution solve_shapes(const Triangulation& t,
                           std::optional<std::vector<std::complex<double>>> initial,
                           const SolveOptions& options) {
  const GluingSystem sys = gluing_equations(t);
  std::vector<std::complex<double>> z = initial ? *initial : default_initial_shapes(t);
  if (static_cast<int>(z.size()) != sys.unknowns) {
    throw ContractViolation("solve_shapes: need one initial shape per tetrahedron");
  }
  check_degenerate(z);

  const auto m = static_cast<Eigen::Index>(sys.rows.size());
  const auto n = static_cast<Eigen::Index>(sys.unknowns);
  ShapeSolution out;
  auto f = sys.evaluate(z);
  double res = max_abs(f);
  int iter = 0;
  while (res >= options.tolerance) {
    if (iter >= options.max_iter) {
      throw ConvergenceError("solve_shapes: no convergence after " +
                             std::to_string(options.max_iter) + " iterations (residual " +
                             std::to_string(res) + ")");
    }
    ++iter;
    Eigen::MatrixXcd jac(m, n);
    Eigen::VectorXcd rhs(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      const auto& row = sys.rows[static_cast<std::size_t>(r)];
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto zj = z[static_cast<std::size_t>(j)];
        jac(r, j) = static_cast<double>(row.a[static_cast<std::size_t>(j)]) / zj -
                    static_cast<double>(row.b[static_cast<std::size_t>(j)]) / (1.0 - zj);
      }
      rhs(r) = -f[static_cast<std::size_t>(r)];
    }
    const Eigen::VectorXcd step = jac.completeOrthogonalDecomposition().solve(rhs);

    // Step halving on the residual norm.
    double norm0 = 0.0;
    for (auto v : f) norm0 += std::norm(v);
    double scale = 1.0;
    std::vector<std::complex<double>> trial(z.size());
    std::vector<std::complex<double>> f_trial;
    for (int h = 0; h < 40; ++h) {
      for (std::size_t j = 0; j < z.size(); ++j) {
        trial[j] = z[j] + scale * step(static_cast<Eigen::Index>(j));
      }
      bool flat = false;
      for (auto v : trial) flat = flat || std::abs(v.imag()) < kDegenerateMargin;
      if (!flat) {
        f_trial = sys.evaluate(trial);
        double norm1 = 0.0;
        for (auto v : f_trial) norm1 += std::norm(v);
        if (norm1 < norm0 || h == 39) break;
      }
      scale /= 2;
    }
    z = trial;
    check_degenerate(z);
    f = f_trial.empty() ? sys.evaluate(z) : f_trial;
    res = max_abs(f);
  }

  const auto eps = orientation_signs(t);
  out.shapes = z;
  out.iterations = iter;
  out.residual = res;
  out.geometric = true;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (z[j].imag() * eps[j] <= 0) out.geometric = false;
  }
  if (!out.geometric) out.warnings.push_back("solution is not geometric (some shape on the wrong side)");
  if (sys.edge_only) out.warnings.push_back("no cusp paths supplied: edge equations only");
  return out;
}

std::vector<std::complex<double>> geometric_shapes(const Triangulation& t,
                                                   const std::vector<std::complex<double>>& shapes) {
  const auto eps = orientation_signs(t);
  if (shapes.size() != eps.size()) throw DomainError("geometric_shapes: one shape per tetrahedron");
  std::vector<std::complex<double>> out(shapes);
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (eps[j] < 0) out[j] = std::conj(out[j]);
  }
  return out;
}

}  // namespace ebloch
