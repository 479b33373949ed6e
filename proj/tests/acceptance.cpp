// Acceptance criteria, one PASS/FAIL line each. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "ebloch/flattening_solver.hpp"
#include "ebloch/gluing_solver.hpp"
#include "ebloch/identity_suites.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ebloch;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double lattice_gap(double x, double m) {
  const double r = std::fmod(std::fmod(x, m) + m, m);
  return std::min(r, m - r);
}

struct Verdict {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(int n, const std::string& title, const std::function<Verdict()>& body) {
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  if (!v.ok) ++failures;
  std::printf("%s criterion %d: %s (%s)\n", v.ok ? "PASS" : "FAIL", n, title.c_str(),
              v.detail.c_str());
  std::fflush(stdout);
}

// The 200 shared five-term instances.
std::vector<FiveTermTuple> five_term_instances() {
  DeterministicRng rng(20240601);
  std::vector<FiveTermTuple> out;
  for (int i = 0; i < 200; ++i) {
    const auto [x, y] = rng.ft_plus_point();
    FiveTermTuple t{x, y};
    t.p0 = rng.integer(-3, 3);
    t.p1 = rng.integer(-3, 3);
    t.q0 = rng.integer(-3, 3);
    t.q1 = rng.integer(-3, 3);
    t.q2 = rng.integer(-3, 3);
    out.push_back(t);
  }
  return out;
}

struct Pipeline {
  std::vector<cd> shapes;
  FlatteningAssignment flat;
  ComplexVolume cv;
};

Pipeline run_pipeline(const Triangulation& t, std::optional<std::vector<cd>> init = std::nullopt) {
  Pipeline p;
  p.shapes = solve_shapes(t, init).shapes;
  p.flat = solve_flattenings(t, p.shapes);
  p.cv = complex_volume(fundamental_element(p.flat));
  return p;
}

}  // namespace

int main() {
  const auto instances = five_term_instances();

  report(1, "lifted five-term relation through R", [&] {
    const auto t0 = Clock::now();
    double worst = 0;
    for (const auto& t : instances) {
      worst = std::max(worst, r_of_element(five_term_instance(t)).distance(
                                  ModPiSquared({0, 0}, Modulus::PiSquared)));
    }
    const double dt = seconds_since(t0);
    return Verdict{worst < 1e-9 && dt < 5.0, "200 instances, max residual " + std::to_string(worst) +
                                                 ", " + std::to_string(dt) + " s"};
  });

  report(2, "nu vanishes symbolically on the same instances", [&] {
    int nonzero = 0;
    for (const auto& t : instances) nonzero += !is_zero(nu_symbolic(five_term_instance(t), t.x, t.y));
    return Verdict{nonzero == 0, std::to_string(nonzero) + " nonzero of 200"};
  });

  report(3, "edge-relation kernel equals V", [&] {
    const IntMatrix kernel = integer_kernel(five_point_edge_relation_matrix());
    const HermiteForm v = column_hermite(v_family_matrix());
    const bool ok = kernel.cols() == 5 && v.rank() == 5 && kernel == v.h.leftCols(5);
    return Verdict{ok, "kernel rank " + std::to_string(kernel.cols()) + ", Hermite bases " +
                           (ok ? "identical" : "differ")};
  });

  report(4, "identity suites through (R, nu, epsilon)", [&] {
    VerifyOptions o;
    o.count = 100;
    o.seed = 7;
    const std::vector<std::function<SuiteResult(const VerifyOptions&)>> suites = {
        transfer_suite, three_equations_suite, homo_suite,      super_transfer_suite,
        one_minus_x_suite, chi_suite,          chi_hat_suite,   kappa_epsilon_suite};
    bool ok = true;
    double worst = 0;
    std::string bad;
    for (const auto& s : suites) {
      const SuiteResult r = s(o);
      worst = std::max(worst, r.max_r_residual);
      if (!r.passed() || !r.nu_exact || r.max_r_residual >= 1e-9 || r.instances != 100) {
        ok = false;
        bad += " " + r.name;
      }
    }
    return Verdict{ok, "8 suites x 100, max residual " + std::to_string(worst) +
                           (bad.empty() ? "" : ", failing:" + bad)};
  });

  report(5, "figure-eight end to end", [&] {
    const auto t0 = Clock::now();
    const Triangulation t = load_triangulation(data_path("figure8.json"));
    const Pipeline p = run_pipeline(t);
    const double dt = seconds_since(t0);
    const cd regular = std::polar(1.0, kPi / 3);
    double shape_gap = 0;
    for (const cd& z : geometric_shapes(t, p.shapes)) shape_gap = std::max(shape_gap, std::abs(z - regular));
    const double vol_oracle = 2 * oracle::clausen_series(kPi / 3);
    const double vol_gap = std::max(std::abs(p.cv.volume - vol_oracle), std::abs(p.cv.volume - 2.029883212819307));
    const double cs_gap = lattice_gap(p.cv.cs, kPi2);
    bool exact = !p.flat.edge_flattened_only;
    for (const auto& r : p.flat.edges) exact &= r.pi_multiple == 0 && r.parity == 0;
    for (const auto& r : p.flat.paths) exact &= r.pi_multiple == 0 && r.parity == 0;
    const bool ok = shape_gap < 1e-10 && vol_gap < 1e-9 && cs_gap < 1e-9 && exact && dt < 1.0;
    char buf[256];
    std::snprintf(buf, sizeof buf, "shape gap %.2e, vol %.15f, cs %.2e, residuals %s, %.3f s",
                  shape_gap, p.cv.volume, p.cv.cs, exact ? "exact" : "nonzero", dt);
    return Verdict{ok, buf};
  });

  report(6, "J complex structure and homology", [&] {
    const Triangulation t = load_triangulation(data_path("figure8.json"));
    const JComplex jc = build_j_complex(t);
    const bool composites = multiply(jc.beta, jc.alpha).isZero() &&
                            multiply(jc.beta_star, jc.beta).isZero() &&
                            multiply(jc.alpha_star, jc.beta_star).isZero();
    const IntVector c = integral_defect(jc, solve_shapes(t).shapes);
    bool even = true;
    for (Eigen::Index i = 0; i < c.size(); ++i) even &= c[i] % 2 == 0;
    const auto h = homology_of_j(jc);
    const int h1k = h1_mod2_dimension(t);
    const bool h2 = h[3].free_rank == 0 && static_cast<int>(h[3].torsion.size()) == h1k &&
                    std::all_of(h[3].torsion.begin(), h[3].torsion.end(), [](auto d) { return d == 2; });
    const bool ok = composites && even && h[0].is_trivial() && h[1].to_string() == "Z/2" &&
                    h[4].to_string() == "Z/2" && h2;
    return Verdict{ok, "H5 " + h[0].to_string() + ", H4 " + h[1].to_string() + ", H2 " +
                           h[3].to_string() + " vs dim H1(K;Z/2) = " + std::to_string(h1k) +
                           ", H1 " + h[4].to_string() + ", defect " + (even ? "even" : "odd")};
  });

  report(7, "invariance under relabeling, initial points and particular solutions", [&] {
    const Triangulation base_t = load_triangulation(data_path("figure8.json"));
    const Pipeline base = run_pipeline(base_t);
    DeterministicRng rng(31337);
    double worst = 0;
    const int trials = 24;
    for (int trial = 0; trial < trials; ++trial) {
      std::vector<int> order = {0, 1};
      if (rng.integer(0, 1)) std::swap(order[0], order[1]);
      const Triangulation t = relabel_tetrahedra(base_t, order);
      const auto eps = orientation_signs(t);
      std::vector<cd> init;
      for (int e : eps) {
        const cd z(rng.uniform(0.2, 0.8), rng.uniform(0.5, 1.2));
        init.push_back(e > 0 ? z : std::conj(z));
      }
      const Pipeline p = run_pipeline(t, init);
      // another particular solution
      IntVector pq(2 * t.size());
      for (int j = 0; j < t.size(); ++j) {
        pq[2 * j] = p.flat.params[static_cast<std::size_t>(j)].p;
        pq[2 * j + 1] = p.flat.params[static_cast<std::size_t>(j)].q;
      }
      for (Eigen::Index k = 0; k < p.flat.kernel.cols(); ++k) pq += rng.integer(-3, 3) * p.flat.kernel.col(k);
      const FlatteningAssignment other = with_indices(t, p.flat, pq);
      if (!other.conditions_hold()) return Verdict{false, "kernel shift broke the conditions"};
      for (const ComplexVolume& cv : {p.cv, complex_volume(fundamental_element(other))}) {
        worst = std::max(worst, std::abs(cv.volume - base.cv.volume));
        worst = std::max(worst, lattice_gap(cv.cs - base.cv.cs, kPi2));
      }
    }
    return Verdict{worst < 1e-9, std::to_string(trials) + " trials, max deviation " + std::to_string(worst)};
  });

  report(8, "cycle relation for n = 3 and n = 2", [&] {
    VerifyOptions o;
    o.count = 50;
    o.seed = 11;
    const SuiteResult three = cycle_three_suite(o);
    const SuiteResult folded = cycle_folded_suite(o);
    const bool ok = three.passed() && folded.passed() && three.nu_exact && folded.nu_exact &&
                    three.instances == 50 && folded.instances == 50;
    return Verdict{ok, "max residual " + std::to_string(std::max(three.max_r_residual, folded.max_r_residual))};
  });

  return failures;
}
