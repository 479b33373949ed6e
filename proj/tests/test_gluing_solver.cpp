#include <doctest.h>

#include "ebloch/gluing_solver.hpp"
#include "ebloch/polylog.hpp"
#include "fixtures.hpp"

using namespace ebloch;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

Triangulation fig8() { return load_triangulation(data_path("figure8.json")); }
const cd kRegular = std::polar(1.0, kPi / 3);

}  // namespace

TEST_CASE("gluing equations of the figure-eight") {
  const auto sys = gluing_equations(fig8());
  CHECK(sys.unknowns == 2);
  CHECK(sys.edge_rows == 2);
  CHECK(sys.cusp_rows == 2);
  CHECK_FALSE(sys.edge_only);
  // substituting the regular shapes (conjugated on the negative tetrahedron)
  const std::vector<cd> exact{kRegular, std::conj(kRegular)};
  CHECK(sys.max_residual(exact) < 1e-14);
  // edge rows add up to 2 pi i per edge
  cd total = 0;
  for (int r = 0; r < sys.edge_rows; ++r) total += sys.rows[static_cast<std::size_t>(r)].target;
  CHECK(std::abs(total - cd(0, 4 * kPi)) < 1e-15);

  const auto edges_only = gluing_equations(load_triangulation(data_path("figure8_no_cusp.json")));
  CHECK(edges_only.edge_only);
  CHECK(edges_only.cusp_rows == 0);
}

TEST_CASE("solve from the default start") {
  const Triangulation t = fig8();
  const auto init = default_initial_shapes(t);
  CHECK(init[0] == cd(0.5, 0.8));
  CHECK(init[1] == cd(0.5, -0.8));
  const ShapeSolution s = solve_shapes(t);
  CHECK(s.geometric);
  CHECK(s.warnings.empty());
  CHECK(s.residual < 1e-12);
  const auto g = geometric_shapes(t, s.shapes);
  for (const cd& z : g) CHECK(std::abs(z - kRegular) < 1e-10);
  // positive volume
  double vol = 0;
  for (const cd& z : g) vol += bloch_wigner(z);
  CHECK(vol > 0);
}

TEST_CASE("solved shapes as the start") {
  const Triangulation t = fig8();
  const ShapeSolution s = solve_shapes(t, std::vector<cd>{kRegular, std::conj(kRegular)});
  CHECK(s.iterations == 0);
  const ShapeSolution hinted = solve_shapes(t, load_triangulation(data_path("figure8_shapes.json")).shapes);
  CHECK(hinted.iterations <= 1);
}

TEST_CASE("solver failures") {
  const Triangulation t = fig8();
  CHECK_THROWS_AS(solve_shapes(t, std::vector<cd>{cd(0.5, 0), cd(0.5, 0)}), DegenerateError);
  SolveOptions few;
  few.max_iter = 1;
  CHECK_THROWS_AS(solve_shapes(t, std::nullopt, few), ConvergenceError);
  CHECK_THROWS(solve_shapes(t, std::vector<cd>{kRegular}));
}

TEST_CASE("edge equations alone") {
  const auto t = load_triangulation(data_path("figure8_no_cusp.json"));
  const ShapeSolution s = solve_shapes(t);
  CHECK(s.residual < 1e-12);
  bool flagged = false;
  for (const auto& w : s.warnings) flagged |= w.find("edge equations only") != std::string::npos;
  CHECK(flagged);
}
