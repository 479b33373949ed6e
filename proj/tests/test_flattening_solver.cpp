#include <doctest.h>

#include <random>

#include "ebloch/flattening_solver.hpp"
#include "ebloch/gluing_solver.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ebloch;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

namespace {

Triangulation fig8() { return load_triangulation(data_path("figure8.json")); }

std::vector<cd> solved(const Triangulation& t) { return solve_shapes(t).shapes; }

// Distance of x from the lattice m Z.
double lattice_gap(double x, double m) {
  const double r = std::fmod(std::fmod(x, m) + m, m);
  return std::min(r, m - r);
}

}  // namespace

TEST_CASE("J complex of the figure-eight") {
  const JComplex jc = build_j_complex(fig8());
  CHECK(jc.beta.rows() == 4);
  CHECK(jc.beta_star.cols() == 4);
  CHECK(jc.alpha.rows() == 2);
  CHECK(jc.alpha.cols() == 1);
  CHECK(multiply(jc.beta, jc.alpha).isZero());
  CHECK(multiply(jc.beta_star, jc.beta).isZero());
  CHECK(multiply(jc.alpha_star, jc.beta_star).isZero());
  CHECK(jc.composites_vanish());
  CHECK(jc.alpha_star == jc.alpha.transpose());
  // alpha* sends an edge to its two endpoints; one vertex here
  for (Eigen::Index e = 0; e < jc.alpha_star.cols(); ++e) CHECK(jc.alpha_star(0, e) == 2);
  IntVector e0 = IntVector::Zero(4), e1 = IntVector::Zero(4);
  e0[0] = 1;
  e1[1] = 1;
  CHECK(JComplex::form(e0, e1) == 1);
  CHECK(JComplex::form(e1, e0) == -1);
  CHECK(JComplex::form(e0, e0) == 0);
}

TEST_CASE("omega and xi") {
  const auto w = omega({cd(0.5, 0)});
  CHECK(std::abs(w[0] - std::log(2.0)) < 1e-15);
  CHECK(std::abs(w[1] - std::log(2.0)) < 1e-15);
  // 1 - e^{i pi/3} = e^{-i pi/3}
  const auto r = omega({std::polar(1.0, kPi / 3)});
  CHECK(std::abs(r[0] - cd(0, kPi / 3)) < 1e-15);
  CHECK(std::abs(r[1] - cd(0, -kPi / 3)) < 1e-15);

  // xi(w) = w1 e0 - w0 e1 equals w2 e1 - w1 e2 once e2 = -e0 - e1
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 50; ++i) {
    const Flattening f(cd(u(gen), u(gen)), cd(u(gen), u(gen)));
    const auto x = xi(f);
    const cd c0 = f.w1;             // e0 part of w2 e1 - w1 e2
    const cd c1 = f.w2 + f.w1;      // e1 part
    REQUIRE(std::abs(x[0] - c0) < 1e-14);
    REQUIRE(std::abs(x[1] - c1) < 1e-14);
  }
}

TEST_CASE("integral defect is even") {
  const Triangulation t = fig8();
  const JComplex jc = build_j_complex(t);
  const IntVector c = integral_defect(jc, solved(t));
  CHECK(c.size() == 2);
  for (Eigen::Index i = 0; i < c.size(); ++i) CHECK(c[i] % 2 == 0);
  CHECK_THROWS_AS(integral_defect(jc, {cd(0.3, 0.4), cd(0.2, -0.9)}), ConsistencyError);
}

TEST_CASE("homology of J") {
  const Triangulation t = fig8();
  const auto h = homology_of_j(build_j_complex(t));
  CHECK(h[0].is_trivial());               // H5
  CHECK(h[1].to_string() == "Z/2");       // H4
  CHECK(h[4].to_string() == "Z/2");       // H1
  const int d = h1_mod2_dimension(t);
  CHECK(h[3].free_rank == 0);
  CHECK(static_cast<int>(h[3].torsion.size()) == d);  // H2 = H1(K; Z/2)
}

TEST_CASE("flattening assignment") {
  const Triangulation t = fig8();
  const auto shapes = solved(t);
  const FlatteningAssignment a = solve_flattenings(t, shapes);
  CHECK(a.params.size() == 2);
  CHECK_FALSE(a.edge_flattened_only);
  CHECK(a.conditions_hold());
  for (const auto& r : a.edges) {
    CHECK(r.pi_multiple == 0);
    CHECK(r.parity == 0);
  }
  REQUIRE(a.paths.size() == 2);
  for (const auto& r : a.paths) {
    CHECK(r.pi_multiple == 0);
    CHECK(r.parity == 0);
    CHECK(r.vertex_link);
  }

  // independent check: sum the signed log-parameters by hand
  const auto classes = edge_classes(t);
  for (const auto& c : classes) {
    cd sum = 0;
    for (const auto& inc : c.incidences) {
      const auto j = static_cast<std::size_t>(inc.tet);
      sum += double(a.signs[j]) * flatten(a.params[j])[inc.pair];
    }
    CHECK(std::abs(sum) < 1e-9);
  }

  // one index off breaks something
  for (Eigen::Index k = 0; k < 4; ++k) {
    IntVector pq(4);
    pq << a.params[0].p, a.params[0].q, a.params[1].p, a.params[1].q;
    pq[k] += 1;
    CHECK_FALSE(with_indices(t, a, pq).conditions_hold());
  }
}

TEST_CASE("particular solutions differ invisibly") {
  const Triangulation t = fig8();
  const FlatteningAssignment a = solve_flattenings(t, solved(t));
  const ComplexVolume base = complex_volume(fundamental_element(a));
  IntVector pq(4);
  pq << a.params[0].p, a.params[0].q, a.params[1].p, a.params[1].q;
  for (Eigen::Index k = 0; k < a.kernel.cols(); ++k) {
    for (int m : {-2, 1, 3}) {
      const FlatteningAssignment b = with_indices(t, a, pq + m * a.kernel.col(k));
      CHECK(b.conditions_hold());
      const ComplexVolume other = complex_volume(fundamental_element(b));
      CHECK(other.r.distance(base.r) < 1e-9);
    }
  }
}

TEST_CASE("fundamental element and complex volume") {
  const Triangulation t = fig8();
  const auto shapes = solved(t);
  const FlatteningAssignment a = solve_flattenings(t, shapes);
  const EBElement e = fundamental_element(a);
  CHECK(e.terms().size() == 2);
  double d = 0;
  for (std::size_t j = 0; j < shapes.size(); ++j) d += a.signs[j] * bloch_wigner(shapes[j]);
  const ComplexVolume cv = complex_volume(e);
  CHECK(cv.r.value().imag() == doctest::Approx(d).epsilon(1e-12));
  CHECK(cv.volume == doctest::Approx(2 * oracle::clausen_series(kPi / 3)).epsilon(1e-10));
  CHECK(lattice_gap(cv.cs, kPi2) < 1e-9);
  CHECK(cv.cs > -kPi2 / 2);
  CHECK(cv.cs <= kPi2 / 2);

  const Triangulation u = relabel_tetrahedra(t, {1, 0});
  const ComplexVolume cu = complex_volume(fundamental_element(solve_flattenings(u, solved(u))));
  CHECK(cu.r.distance(cv.r) < 1e-9);
}

TEST_CASE("unordered labeling agrees modulo pi^2/6") {
  const auto u = load_triangulation(data_path("figure8_unordered.json"));
  const auto a = solve_flattenings(u, solved(u));
  CHECK(a.conditions_hold());
  const ComplexVolume cv = complex_volume(fundamental_element(a));
  CHECK(cv.volume == doctest::Approx(2.029883212819307).epsilon(1e-10));
  CHECK(lattice_gap(cv.cs, kPi2 / 6) < 1e-9);
}

TEST_CASE("edge-flattened only") {
  const auto t = load_triangulation(data_path("figure8_no_cusp.json"));
  const auto a = solve_flattenings(t, solved(t));
  CHECK(a.edge_flattened_only);
  CHECK(a.paths.empty());
  bool flagged = false;
  for (const auto& w : a.warnings) flagged |= w.find("edge-flattened only") != std::string::npos;
  CHECK(flagged);
}

TEST_CASE("centered_mod") {
  CHECK(centered_mod(0.75, 1.0) == doctest::Approx(-0.25));
  CHECK(centered_mod(0.5, 1.0) == doctest::Approx(0.5));
  CHECK(centered_mod(-0.5, 1.0) == doctest::Approx(0.5));
  CHECK_FALSE(std::signbit(centered_mod(-0.0, 1.0)));
}

TEST_CASE("cycle relation") {
  const cd x(0.3, 0.2), y(0, 1);
  const auto three = three_simplex_cycle(x, y, 1, 0, 0, 2, -1);
  CHECK(three.size() == 3);
  CHECK(cycle_relation_check(three, SymbolBasis::five_term(x, y)).holds());

  const cd z(0.4, 0.6);
  const auto folded = folded_cycle(z, 2, 1, -3);
  CHECK(folded.size() == 2);
  CHECK(cycle_relation_check(folded, SymbolBasis::single(z)).holds());

  // the primed element is the homo shift of the original: every q down by one
  const auto check = cycle_relation_check(three, SymbolBasis::five_term(x, y));
  for (const auto& s : three) {
    const ExtendedParam p = primed_param(s);
    CHECK(p.z == s.param.z);
  }
  CHECK(check.primed.terms().size() == 3);

  // break the precondition
  auto bad = three;
  bad[0].param.p += 1;
  CHECK_THROWS_AS(cycle_relation_check(bad, SymbolBasis::five_term(x, y)), ContractViolation);

  CycleSimplex same;
  same.top_pair = same.bottom_pair = 1;
  CHECK_THROWS(primed_param(same));
}
