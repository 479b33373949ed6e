#include "ebloch/identity_suites.hpp"

#include <functional>
#include <numbers>
#include <sstream>

#include "ebloch/flattening_solver.hpp"
#include "ebloch/ideal_geometry.hpp"
#include "ebloch/integer_matrix.hpp"

namespace ebloch {

namespace {

constexpr double kPi = std::numbers::pi;
const std::complex<double> kPiI(0.0, kPi);

std::string fmt(std::complex<double> z) {
  std::ostringstream out;
  out.precision(17);
  out << "(" << z.real() << "," << z.imag() << ")";
  return out.str();
}

class Tally {
 public:
  Tally(std::string name, const VerifyOptions& o) : o_(o) { r_.name = std::move(name); }

  void record(double r_residual, bool nu_ok, bool other_ok, const std::function<std::string()>& dump) {
    ++r_.instances;
    r_.max_r_residual = std::max(r_.max_r_residual, r_residual);
    r_.nu_exact = r_.nu_exact && nu_ok;
    if (r_residual > o_.tolerance || !nu_ok || !other_ok) {
      ++r_.failures;
      if (static_cast<int>(r_.counterexamples.size()) < o_.max_dumps) {
        std::ostringstream out;
        out.precision(17);
        out << dump() << " r_residual=" << r_residual << " nu_ok=" << nu_ok
            << " other_ok=" << other_ok;
        r_.counterexamples.push_back(out.str());
      }
    }
  }

  SuiteResult result() && { return std::move(r_); }

 private:
  const VerifyOptions& o_;
  SuiteResult r_;
};

DeterministicRng suite_rng(const VerifyOptions& o, std::uint64_t salt) {
  return DeterministicRng(o.seed ^ (0x9E3779B97F4A7C15ULL * salt));
}

double r_distance(const EBElement& e, std::complex<double> expected) {
  const ModPiSquared r = r_of_element(e);
  return r.distance(reduce_mod(expected, r.modulus()));
}

WedgeExpr log_wedge_pi(const std::string& symbol, long long k) {
  return wedge(SymbolVector::symbol(symbol), SymbolVector::symbol(SymbolBasis::kPiI, k));
}

}  // namespace

std::complex<double> DeterministicRng::generic_complex() {
  const double im = uniform(0.1, 2.0);
  return {uniform(-2.0, 3.0), uniform() < 0.5 ? im : -im};
}

std::complex<double> DeterministicRng::upper_half_plane() {
  return {uniform(-2.0, 3.0), uniform(0.1, 2.0)};
}

std::pair<std::complex<double>, std::complex<double>> DeterministicRng::ft_plus_point() {
  const std::complex<double> y = {uniform(-2.0, 3.0), uniform(0.2, 2.0)};
  while (true) {
    const double a = uniform(0.02, 0.96);
    const double b = uniform(0.02, 0.96);
    if (a + b < 0.98) {
      const std::complex<double> x = a + b * y;
      if (in_ft_plus(x, y)) return {x, y};
    }
  }
}

SuiteResult five_term_suite(const VerifyOptions& o) {
  Tally tally("five_term", o);
  auto rng = suite_rng(o, 1);
  for (int i = 0; i < o.count; ++i) {
    const auto [x, y] = rng.ft_plus_point();
    FiveTermTuple t{x, y, rng.integer(-3, 3), rng.integer(-3, 3), rng.integer(-3, 3),
                    rng.integer(-3, 3), rng.integer(-3, 3)};
    const EBElement e = five_term_instance(t);
    const double r = r_distance(e, 0.0);
    const bool nu = nu_symbolic(e, x, y).is_zero();
    const bool eps = epsilon_parity(e) == 0;
    tally.record(r, nu, eps, [&] {
      std::ostringstream out;
      out << "x=" << fmt(x) << " y=" << fmt(y) << " p0=" << t.p0 << " p1=" << t.p1
          << " q0=" << t.q0 << " q1=" << t.q1 << " q2=" << t.q2;
      return out.str();
    });
  }
  return std::move(tally).result();
}

SuiteResult transfer_suite(const VerifyOptions& o) {
  Tally tally("transfer", o);
  auto rng = suite_rng(o, 2);
  for (int i = 0; i < o.count; ++i) {
    const auto z = rng.generic_complex();
    const std::int64_t p = rng.integer(-5, 5), q = rng.integer(-5, 5);
    const std::int64_t p2 = rng.integer(-5, 5), q2 = rng.integer(-5, 5);
    const EBElement e = transfer_instance(z, p, q, p2, q2);
    tally.record(r_distance(e, 0.0), nu_symbolic(e, SymbolBasis::single(z)).is_zero(), true, [&] {
      std::ostringstream out;
      out << "z=" << fmt(z) << " p=" << p << " q=" << q << " p'=" << p2 << " q'=" << q2;
      return out.str();
    });
  }
  return std::move(tally).result();
}

SuiteResult super_transfer_suite(const VerifyOptions& o) {
  Tally tally("super_transfer", o);
  auto rng = suite_rng(o, 3);
  for (int i = 0; i < o.count; ++i) {
    const auto z = rng.generic_complex();
    const std::int64_t p = rng.integer(-6, 6), q = rng.integer(-6, 6);
    EBElement e(BlochVersion::EP);
    e.add(z, p, q, 1);
    e -= super_transfer_rhs(z, p, q);
    tally.record(r_distance(e, 0.0), nu_symbolic(e, SymbolBasis::single(z)).is_zero(), true, [&] {
      std::ostringstream out;
      out << "z=" << fmt(z) << " p=" << p << " q=" << q;
      return out.str();
    });
  }
  return std::move(tally).result();
}

SuiteResult three_equations_suite(const VerifyOptions& o) {
  Tally tally("three_equations", o);
  auto rng = suite_rng(o, 4);
  for (int i = 0; i < o.count; ++i) {
    const auto z = rng.generic_complex();
    const auto kind = static_cast<ThreeEquationsKind>(rng.integer(0, 2));
    const std::int64_t p = rng.integer(-5, 5), q = rng.integer(-5, 5), other = rng.integer(-5, 5);
    const EBElement e = three_equations_relation(kind, z, p, q, other);
    tally.record(r_distance(e, 0.0), nu_symbolic(e, SymbolBasis::single(z)).is_zero(), true, [&] {
      std::ostringstream out;
      out << "kind=" << static_cast<int>(kind) << " z=" << fmt(z) << " p=" << p << " q=" << q
          << " other=" << other;
      return out.str();
    });
  }
  return std::move(tally).result();
}

SuiteResult homo_suite(const VerifyOptions& o) {
  Tally tally("homo", o);
  auto rng = suite_rng(o, 5);
  for (int i = 0; i < o.count; ++i) {
    const auto [x, y] = rng.ft_plus_point();
    const std::int64_t p0 = rng.integer(-4, 4), p1 = rng.integer(-4, 4);
    const std::int64_t q0 = rng.integer(-4, 4), q1 = rng.integer(-4, 4), q2 = rng.integer(-4, 4);
    const EBElement e = homo_relation(x, y, p0, p1, p1 - p0, q0, q1, q2);
    tally.record(r_distance(e, 0.0), nu_symbolic(e, x, y).is_zero(), true, [&] {
      std::ostringstream out;
      out << "x=" << fmt(x) << " y=" << fmt(y) << " p0=" << p0 << " p1=" << p1 << " q0=" << q0
          << " q1=" << q1 << " q2=" << q2;
      return out.str();
    });
  }
  return std::move(tally).result();
}

SuiteResult one_minus_x_suite(const VerifyOptions& o) {
  Tally tally("one_minus_x", o);
  auto rng = suite_rng(o, 6);
  for (int i = 0; i < o.count; ++i) {
    const auto x = rng.generic_complex();
    const std::int64_t p = rng.integer(-5, 5), q = rng.integer(-5, 5);
    EBElement lhs(BlochVersion::EP);
    lhs.add(x, p, q, 1);
    lhs.add(1.0 - x, -q, -p, 1);
    const double r_lhs = r_distance(lhs, -kPi * kPi / 6);
    const EBElement e = one_minus_x_relation(x, p, q);
    const SymbolBasis basis({{"log_x", x}, {"log_1mx", 1.0 - x}, {"log_2", 2.0}});
    tally.record(std::max(r_lhs, r_distance(e, 0.0)), nu_symbolic(e, basis).is_zero(), true, [&] {
      std::ostringstream out;
      out << "x=" << fmt(x) << " p=" << p << " q=" << q;
      return out.str();
    });
  }
  return std::move(tally).result();
}

SuiteResult chi_suite(const VerifyOptions& o) {
  Tally tally("chi", o);
  auto rng = suite_rng(o, 7);
  for (int i = 0; i < o.count; ++i) {
    const auto z = rng.generic_complex();
    const EBElement e = chi(z);
    const double r = r_distance(e, 0.5 * kPiI * principal_log(z));
    const bool nu = nu_symbolic(e, SymbolBasis::single(z)) == log_wedge_pi("log_x", 1);
    tally.record(r, nu, true, [&] { return "z=" + fmt(z); });
  }
  return std::move(tally).result();
}

SuiteResult chi_hat_suite(const VerifyOptions& o) {
  Tally tally("chi_hat", o);
  auto rng = suite_rng(o, 8);
  for (int i = 0; i < o.count; ++i) {
    const auto z = rng.generic_complex();
    const EBElement e = chi_hat(z);
    const double r = r_distance(e, kPiI * principal_log(z));
    // Compatibility with the EP version: both sides are pi i log z mod pi^2.
    const ModPiSquared hat = reduce_mod(r_of_element(e).value(), Modulus::PiSquared);
    const double compat = hat.distance(r_of_element(chi(z * z)));
    const bool nu = nu_symbolic(e, SymbolBasis::single(z)) == log_wedge_pi("log_x", 2);
    tally.record(std::max(r, compat), nu, true, [&] { return "z=" + fmt(z); });
  }
  return std::move(tally).result();
}

SuiteResult kappa_epsilon_suite(const VerifyOptions& o) {
  Tally tally("kappa_epsilon", o);
  auto rng = suite_rng(o, 9);
  for (int i = 0; i < o.count; ++i) {
    const auto z = rng.generic_complex();
    const auto z2 = rng.generic_complex();
    const EBElement k = kappa_element(z);
    const EBElement diff = k - kappa_element(z2);
    const SymbolBasis basis({{"log_z", z}, {"log_1mz", 1.0 - z}, {"log_w", z2}, {"log_1mw", 1.0 - z2}},
                            1);
    const auto [x, y] = rng.ft_plus_point();
    const EBElement ft = five_term_instance({x, y, rng.integer(-3, 3), rng.integer(-3, 3),
                                             rng.integer(-3, 3), rng.integer(-3, 3),
                                             rng.integer(-3, 3)});
    const bool eps_ok = epsilon_parity(k) == 1 && epsilon_parity(ft) == 0 && epsilon_parity(diff) == 0;
    tally.record(std::max(r_distance(k, 0.0), r_distance(diff, 0.0)),
                 nu_symbolic(diff, basis).is_zero(), eps_ok,
                 [&] { return "z=" + fmt(z) + " z'=" + fmt(z2); });
  }
  return std::move(tally).result();
}

SuiteResult edge_kernel_suite(const VerifyOptions& o) {
  Tally tally("edge_kernel", o);
  auto rng = suite_rng(o, 10);
  if (o.count == 0) return std::move(tally).result();

  const IntMatrix rel = five_point_edge_relation_matrix();
  const IntMatrix v = v_family_matrix();
  const IntMatrix ker = integer_kernel(rel);
  const IntMatrix v_hnf = column_hermite(v).h.leftCols(5);
  const bool lattice_ok = ker.cols() == 5 && ker == v_hnf;

  for (int i = 0; i < o.count; ++i) {
    const auto [x, y] = rng.ft_plus_point();
    FiveTermTuple t{x, y, rng.integer(-3, 3), rng.integer(-3, 3), rng.integer(-3, 3),
                    rng.integer(-3, 3), rng.integer(-3, 3)};
    const auto shapes = five_point_shapes(x, y);
    const auto idx = t.indices();
    std::array<Flattening, 5> flats;
    for (std::size_t k = 0; k < 5; ++k) {
      flats[k] = flatten(ExtendedParam{shapes[k], idx[k].first, idx[k].second, std::nullopt});
    }
    double worst = 0.0;
    for (auto r : five_point_edge_conditions(flats)) worst = std::max(worst, std::abs(r));
    tally.record(worst, lattice_ok, true, [&] {
      std::ostringstream out;
      out << "x=" << fmt(x) << " y=" << fmt(y) << " lattice_ok=" << lattice_ok;
      return out.str();
    });
  }
  return std::move(tally).result();
}

SuiteResult cycle_three_suite(const VerifyOptions& o) {
  Tally tally("cycle_three", o);
  auto rng = suite_rng(o, 11);
  for (int i = 0; i < o.count; ++i) {
    const auto [x, y] = rng.ft_plus_point();
    const std::int64_t p0 = rng.integer(-4, 4), p1 = rng.integer(-4, 4);
    const std::int64_t q0 = rng.integer(-4, 4), q1 = rng.integer(-4, 4), q2 = rng.integer(-4, 4);
    const CycleCheck c = cycle_relation_check(three_simplex_cycle(x, y, p0, p1, q0, q1, q2),
                                              SymbolBasis::five_term(x, y));
    tally.record(c.r_residual, c.nu_equal, true, [&] {
      std::ostringstream out;
      out << "x=" << fmt(x) << " y=" << fmt(y) << " p0=" << p0 << " p1=" << p1 << " q0=" << q0
          << " q1=" << q1 << " q2=" << q2;
      return out.str();
    });
  }
  return std::move(tally).result();
}

SuiteResult cycle_folded_suite(const VerifyOptions& o) {
  Tally tally("cycle_folded", o);
  auto rng = suite_rng(o, 12);
  for (int i = 0; i < o.count; ++i) {
    const auto x = rng.generic_complex();
    const std::int64_t p = rng.integer(-4, 4), q1 = rng.integer(-4, 4), q2 = rng.integer(-4, 4);
    const CycleCheck c =
        cycle_relation_check(folded_cycle(x, p, q1, q2), SymbolBasis::single(x));
    tally.record(c.r_residual, c.nu_equal, true, [&] {
      std::ostringstream out;
      out << "x=" << fmt(x) << " p=" << p << " q1=" << q1 << " q2=" << q2;
      return out.str();
    });
  }
  return std::move(tally).result();
}

std::vector<SuiteResult> run_identity_suites(const VerifyOptions& o) {
  return {five_term_suite(o),     transfer_suite(o),      super_transfer_suite(o),
          three_equations_suite(o), homo_suite(o),        one_minus_x_suite(o),
          chi_suite(o),           chi_hat_suite(o),       kappa_epsilon_suite(o),
          edge_kernel_suite(o),   cycle_three_suite(o),   cycle_folded_suite(o)};
}

}  // namespace ebloch
