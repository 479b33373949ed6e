#include "ebloch/flattening_solver.hpp"

#include <cmath>
#include <numbers>

namespace ebloch {

namespace {

constexpr double kPi = std::numbers::pi;
const std::complex<double> kPiI(0.0, kPi);

// (p, q) coefficients of the pi*i part of w_k.
constexpr std::array<std::array<int, 2>, 3> kPairCoef = {{{1, 0}, {0, 1}, {-1, -1}}};

int imag_sign(std::complex<double> z) { return z.imag() >= 0 ? 1 : -1; }

// Parity parameter s with w_k = Log(edge parameter) + s pi i.
std::int64_t parity_parameter(const ExtendedParam& param, int pair) {
  switch (pair) {
    case 0: return param.p;
    case 1: return param.q;
    default: return -imag_sign(param.numeric_z()) - param.p - param.q;
  }
}

std::int64_t mod2(std::int64_t x) { return ((x % 2) + 2) % 2; }

std::int64_t round_pi_multiple(std::complex<double> v, double tol, const std::string& what) {
  const std::complex<double> c = v / kPiI;
  const double r = std::round(c.real());
  if (std::abs(c.real() - r) > tol || std::abs(c.imag()) > tol) {
    throw ConsistencyError(what + " is not an integer multiple of pi*i (shapes do not solve the "
                                  "gluing equations)");
  }
  return static_cast<std::int64_t>(r);
}

}  // namespace

// ---------------------------------------------------------------------------
// J complex.

std::int64_t JComplex::form(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size() || a.size() % 2 != 0) throw ContractViolation("JComplex::form: shape");
  std::int64_t s = 0;
  for (Eigen::Index j = 0; j < a.size(); j += 2) {
    s = checked::add(s, checked::sub(checked::mul(a(j), b(j + 1)), checked::mul(a(j + 1), b(j))));
  }
  return s;
}

bool JComplex::composites_vanish() const {
  return multiply(beta, alpha).isZero() && multiply(beta_star, beta).isZero() &&
         multiply(alpha_star, beta_star).isZero();
}

JComplex build_j_complex(const Triangulation& t) {
  JComplex jc;
  const auto classes = edge_classes(t);
  const auto index = edge_class_index(t, classes);
  int nv = 0;
  const auto vc = vertex_classes(t, &nv);
  jc.tetrahedra = t.size();
  jc.edges = static_cast<int>(classes.size());
  jc.vertices = nv;
  jc.signs = orientation_signs(t);
  for (const auto& c : classes) jc.valences.push_back(c.valence());

  const Eigen::Index n = t.size(), ne = jc.edges;
  jc.alpha = IntMatrix::Zero(ne, nv);
  for (Eigen::Index e = 0; e < ne; ++e) {
    const auto& inc = classes[static_cast<std::size_t>(e)].incidences.front();
    jc.alpha(e, vc[static_cast<std::size_t>(inc.tet)][static_cast<std::size_t>(inc.a)]) += 1;
    jc.alpha(e, vc[static_cast<std::size_t>(inc.tet)][static_cast<std::size_t>(inc.b)]) += 1;
  }
  jc.alpha_star = jc.alpha.transpose();

  jc.beta = IntMatrix::Zero(2 * n, ne);
  jc.beta_star = IntMatrix::Zero(ne, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    // counts(E, k): edges of tetrahedron j in pair k and class E.
    IntMatrix counts = IntMatrix::Zero(ne, 3);
    for (int le = 0; le < 6; ++le) {
      const auto [a, b] = local_edge_vertices(le);
      counts(index[static_cast<std::size_t>(j)][static_cast<std::size_t>(le)], edge_pair_index(a, b)) += 1;
    }
    const std::int64_t eps = jc.signs[static_cast<std::size_t>(j)];
    for (Eigen::Index e = 0; e < ne; ++e) {
      const std::int64_t a0 = counts(e, 0), a1 = counts(e, 1), a2 = counts(e, 2);
      jc.beta(2 * j, e) = a0 - a2;
      jc.beta(2 * j + 1, e) = a1 - a2;
      jc.beta_star(e, 2 * j) = eps * (a1 - a2);
      jc.beta_star(e, 2 * j + 1) = eps * (a2 - a0);
    }
  }
  return jc;
}

Eigen::VectorXcd omega(const std::vector<std::complex<double>>& shapes) {
  Eigen::VectorXcd w(2 * static_cast<Eigen::Index>(shapes.size()));
  for (std::size_t j = 0; j < shapes.size(); ++j) {
    const auto x = shapes[j];
    w(2 * static_cast<Eigen::Index>(j)) = -principal_log(1.0 - x);
    w(2 * static_cast<Eigen::Index>(j) + 1) = -principal_log(x);
  }
  return w;
}

std::array<std::complex<double>, 2> xi(const Flattening& w) { return {w.w1, -w.w0}; }

IntVector integral_defect(const JComplex& jc, const std::vector<std::complex<double>>& shapes,
                          double tol) {
  if (static_cast<int>(shapes.size()) != jc.tetrahedra) {
    throw ContractViolation("integral_defect: one shape per tetrahedron required");
  }
  const Eigen::VectorXcd w = omega(shapes);
  const Eigen::VectorXcd b = jc.beta_star.cast<std::complex<double>>() * w;
  IntVector c(b.size());
  for (Eigen::Index e = 0; e < b.size(); ++e) {
    c(e) = round_pi_multiple(b(e), tol, "beta*(omega) at edge " + std::to_string(e));
  }
  return c;
}

std::array<AbelianGroup, 5> homology_of_j(const JComplex& jc) {
  const Eigen::Index nv = jc.vertices, ne = jc.edges, nj = 2 * jc.tetrahedra;
  return {homology_at(IntMatrix::Zero(nv, 0), jc.alpha, nv),
          homology_at(jc.alpha, jc.beta, ne),
          homology_at(jc.beta, jc.beta_star, nj),
          homology_at(jc.beta_star, jc.alpha_star, ne),
          homology_at(jc.alpha_star, IntMatrix::Zero(0, nv), nv)};
}

int h1_mod2_dimension(const Triangulation& t) {
  const auto classes = edge_classes(t);
  const auto index = edge_class_index(t, classes);
  int nv = 0, nf = 0;
  const auto vc = vertex_classes(t, &nv);
  const auto fc = face_classes(t, &nf);
  const Eigen::Index ne = static_cast<Eigen::Index>(classes.size());

  IntMatrix d1 = IntMatrix::Zero(nv, ne);
  for (Eigen::Index e = 0; e < ne; ++e) {
    const auto& inc = classes[static_cast<std::size_t>(e)].incidences.front();
    d1(vc[static_cast<std::size_t>(inc.tet)][static_cast<std::size_t>(inc.a)], e) += 1;
    d1(vc[static_cast<std::size_t>(inc.tet)][static_cast<std::size_t>(inc.b)], e) += 1;
  }
  IntMatrix d2 = IntMatrix::Zero(ne, nf);
  std::vector<bool> done(static_cast<std::size_t>(nf), false);
  for (int j = 0; j < t.size(); ++j) {
    for (int f = 0; f < 4; ++f) {
      const int face = fc[static_cast<std::size_t>(j)][static_cast<std::size_t>(f)];
      if (done[static_cast<std::size_t>(face)]) continue;
      done[static_cast<std::size_t>(face)] = true;
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
          if (a != f && b != f) d2(index[static_cast<std::size_t>(j)][static_cast<std::size_t>(local_edge_index(a, b))], face) += 1;
    }
  }
  return static_cast<int>(ne - rank_mod2(d1) - rank_mod2(d2));
}

// ---------------------------------------------------------------------------
// Flattenings.

bool FlatteningAssignment::conditions_hold(double tol) const {
  for (const auto& r : edges)
    if (std::abs(r.log_parameter) > tol || r.parity != 0) return false;
  for (const auto& r : paths) {
    if (r.parity != 0) return false;
    if (r.vertex_link && std::abs(r.log_parameter) > tol) return false;
  }
  return true;
}

void fill_report(const Triangulation& t, FlatteningAssignment& a) {
  std::vector<Flattening> flats;
  for (const auto& p : a.params) flats.push_back(flatten(p));

  a.edges.clear();
  const auto classes = edge_classes(t);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    PathReport r;
    r.label = "edge " + std::to_string(k);
    r.vertex_link = true;
    std::int64_t parity = 0;
    for (const auto& inc : classes[k].incidences) {
      const auto j = static_cast<std::size_t>(inc.tet);
      r.log_parameter += static_cast<double>(a.signs[j]) * flats[j][inc.pair];
      parity += parity_parameter(a.params[j], inc.pair);
    }
    r.pi_multiple = std::llround(r.log_parameter.imag() / kPi);
    r.parity = static_cast<int>(mod2(parity));
    a.edges.push_back(r);
  }

  a.paths.clear();
  for (std::size_t k = 0; k < t.cusp_paths.size(); ++k) {
    const PathPasses passes = path_passes(t, t.cusp_paths[k]);
    PathReport r;
    r.label = "cusp path " + std::to_string(k);
    r.vertex_link = passes.in_vertex_link();
    std::int64_t parity = 0;
    for (const auto& pe : passes.edges) {
      const auto j = static_cast<std::size_t>(pe.tet);
      r.log_parameter += static_cast<double>(pe.rotation) * flats[j][pe.pair];
      parity += parity_parameter(a.params[j], pe.pair);
    }
    r.pi_multiple = std::llround(r.log_parameter.imag() / kPi);
    r.parity = static_cast<int>(mod2(parity));
    a.paths.push_back(r);
  }
}

FlatteningAssignment solve_flattenings(const Triangulation& t,
                                       const std::vector<std::complex<double>>& shapes) {
  const int n = t.size();
  if (static_cast<int>(shapes.size()) != n) {
    throw ContractViolation("solve_flattenings: one shape per tetrahedron required");
  }
  const auto eps = orientation_signs(t);
  std::vector<Flattening> base;
  for (auto z : shapes) base.push_back(flatten(ExtendedParam{z, 0, 0, std::nullopt}));

  struct Row {
    std::vector<std::int64_t> pq;
    std::int64_t rhs;
    bool parity;
  };
  std::vector<Row> rows;
  FlatteningAssignment out;

  auto add_parity_row = [&](const std::vector<std::pair<int, int>>& passed) {
    Row r{std::vector<std::int64_t>(2 * static_cast<std::size_t>(n), 0), 0, true};
    for (auto [tet, pair] : passed) {
      r.pq[2 * static_cast<std::size_t>(tet)] += kPairCoef[static_cast<std::size_t>(pair)][0];
      r.pq[2 * static_cast<std::size_t>(tet) + 1] += kPairCoef[static_cast<std::size_t>(pair)][1];
      if (pair == 2) r.rhs += imag_sign(shapes[static_cast<std::size_t>(tet)]);
    }
    rows.push_back(std::move(r));
  };

  const auto classes = edge_classes(t);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    Row r{std::vector<std::int64_t>(2 * static_cast<std::size_t>(n), 0), 0, false};
    std::complex<double> l0 = 0.0;
    std::vector<std::pair<int, int>> passed;
    for (const auto& inc : classes[k].incidences) {
      const auto j = static_cast<std::size_t>(inc.tet);
      r.pq[2 * j] += eps[j] * kPairCoef[static_cast<std::size_t>(inc.pair)][0];
      r.pq[2 * j + 1] += eps[j] * kPairCoef[static_cast<std::size_t>(inc.pair)][1];
      l0 += static_cast<double>(eps[j]) * base[j][inc.pair];
      passed.emplace_back(inc.tet, inc.pair);
    }
    r.rhs = -round_pi_multiple(l0, 1e-9, "log-parameter sum at edge " + std::to_string(k));
    rows.push_back(std::move(r));
    add_parity_row(passed);
  }

  for (std::size_t k = 0; k < t.cusp_paths.size(); ++k) {
    const PathPasses passes = path_passes(t, t.cusp_paths[k]);
    std::vector<std::pair<int, int>> passed;
    for (const auto& pe : passes.edges) passed.emplace_back(pe.tet, pe.pair);
    if (passes.in_vertex_link()) {
      Row r{std::vector<std::int64_t>(2 * static_cast<std::size_t>(n), 0), 0, false};
      std::complex<double> l0 = 0.0;
      for (const auto& pe : passes.edges) {
        const auto j = static_cast<std::size_t>(pe.tet);
        r.pq[2 * j] += pe.rotation * kPairCoef[static_cast<std::size_t>(pe.pair)][0];
        r.pq[2 * j + 1] += pe.rotation * kPairCoef[static_cast<std::size_t>(pe.pair)][1];
        l0 += static_cast<double>(pe.rotation) * base[j][pe.pair];
      }
      r.rhs = -round_pi_multiple(l0, 1e-9, "log-parameter of cusp path " + std::to_string(k));
      rows.push_back(std::move(r));
    } else {
      out.warnings.push_back("cusp path " + std::to_string(k) +
                             " is not in a vertex neighbourhood: parity condition only");
    }
    add_parity_row(passed);
  }

  Eigen::Index parity_rows = 0;
  for (const auto& r : rows) parity_rows += r.parity ? 1 : 0;
  const Eigen::Index cols = 2 * n + parity_rows;
  IntMatrix a = IntMatrix::Zero(static_cast<Eigen::Index>(rows.size()), cols);
  IntVector b(static_cast<Eigen::Index>(rows.size()));
  Eigen::Index aux = 2 * n;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    for (std::size_t c = 0; c < rows[i].pq.size(); ++c) a(r, static_cast<Eigen::Index>(c)) = rows[i].pq[c];
    if (rows[i].parity) a(r, aux++) = 2;
    b(r) = rows[i].rhs;
  }

  const auto x = solve_integer(a, b);
  if (!x) throw IntegerSystemError("flattening system has no integer solution (invalid input data)");

  out.signs = eps;
  for (int j = 0; j < n; ++j) {
    out.params.push_back(ExtendedParam{shapes[static_cast<std::size_t>(j)], (*x)(2 * j),
                                       (*x)(2 * j + 1), std::nullopt});
  }
  const IntMatrix kernel = integer_kernel(a);
  const IntMatrix kpq = kernel.topRows(2 * n);
  const HermiteForm hk = column_hermite(kpq);
  out.kernel = hk.h.leftCols(hk.rank());
  out.edge_flattened_only = t.cusp_paths.empty();
  if (out.edge_flattened_only) out.warnings.push_back("edge-flattened only, unverified");
  fill_report(t, out);
  return out;
}

FlatteningAssignment with_indices(const Triangulation& t, const FlatteningAssignment& a,
                                  const IntVector& pq) {
  if (pq.size() != 2 * static_cast<Eigen::Index>(a.params.size())) {
    throw ContractViolation("with_indices: wrong length");
  }
  FlatteningAssignment out = a;
  for (std::size_t j = 0; j < out.params.size(); ++j) {
    out.params[j].p = pq(2 * static_cast<Eigen::Index>(j));
    out.params[j].q = pq(2 * static_cast<Eigen::Index>(j) + 1);
  }
  fill_report(t, out);
  return out;
}

EBElement fundamental_element(const FlatteningAssignment& a) {
  EBElement e(BlochVersion::EP);
  for (std::size_t j = 0; j < a.params.size(); ++j) e.add(a.params[j], a.signs[j]);
  return e;
}

double centered_mod(double x, double m) {
  double r = reduce_real(x, m);
  if (r > m / 2) r -= m;
  return r + 0.0;  // no negative zero
}

ComplexVolume complex_volume(const EBElement& e) {
  ComplexVolume cv;
  cv.r = r_of_element(e);
  cv.volume = cv.r.value().imag();
  cv.cs = centered_mod(-cv.r.value().real(), modulus_value(cv.r.modulus()));
  return cv;
}

// ---------------------------------------------------------------------------
// Cycle relation.

ExtendedParam primed_param(const CycleSimplex& s) {
  if (s.top_pair == s.bottom_pair || s.top_pair < 0 || s.top_pair > 2 || s.bottom_pair < 0 ||
      s.bottom_pair > 2) {
    throw ContractViolation("cycle simplex: top and bottom must be distinct edge pairs");
  }
  std::array<std::int64_t, 3> d{};
  d[static_cast<std::size_t>(s.top_pair)] += s.sign;
  d[static_cast<std::size_t>(s.bottom_pair)] -= s.sign;
  ExtendedParam out = s.param;
  out.p += d[0];
  out.q += d[1];
  return out;
}

CycleCheck cycle_relation_check(const std::vector<CycleSimplex>& simplices,
                                const SymbolBasis& basis, double tol) {
  if (simplices.empty()) throw ContractViolation("cycle_relation_check: no simplices");
  std::complex<double> log_sum = 0.0;
  std::int64_t parity = 0;
  for (const auto& s : simplices) {
    log_sum += static_cast<double>(s.sign) * flatten(s.param)[s.edge_pair()];
    parity += parity_parameter(s.param, s.edge_pair());
  }
  if (std::abs(log_sum) > tol || mod2(parity) != 0) {
    throw ContractViolation("cycle_relation_check: signed sums around the edge do not vanish");
  }
  CycleCheck out;
  for (const auto& s : simplices) {
    out.original.add(s.param, s.sign);
    out.primed.add(primed_param(s), s.sign);
  }
  out.r_residual = r_of_element(out.original).distance(r_of_element(out.primed));
  out.nu_equal = nu_symbolic(out.original, basis) == nu_symbolic(out.primed, basis);
  return out;
}

std::vector<CycleSimplex> three_simplex_cycle(std::complex<double> x, std::complex<double> y,
                                              std::int64_t p0, std::int64_t p1, std::int64_t q0,
                                              std::int64_t q1, std::int64_t q2) {
  const auto shapes = five_point_shapes(x, y);
  const std::array<std::pair<std::int64_t, std::int64_t>, 3> idx = {
      {{p0, q0}, {p1, q1}, {p1 - p0, q2}}};
  auto local = [](int j, int v) { return v < j ? v : v - 1; };
  std::vector<CycleSimplex> out;
  for (int j = 0; j < 3; ++j) {
    const int next = (j + 1) % 3;
    const int w = 3 - j - next;  // third vertex of the shared face besides v3, v4
    CycleSimplex s;
    s.param = ExtendedParam{shapes[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(j)].first,
                            idx[static_cast<std::size_t>(j)].second, std::nullopt};
    s.sign = j % 2 == 0 ? 1 : -1;
    s.top_pair = edge_pair_index(local(j, w), local(j, 4));
    s.bottom_pair = edge_pair_index(local(j, w), local(j, 3));
    out.push_back(s);
  }
  return out;
}

std::vector<CycleSimplex> folded_cycle(std::complex<double> x, std::int64_t p, std::int64_t q1,
                                       std::int64_t q2) {
  // In both simplices the free vertex of the shared face sits at position 3;
  // z1 (position 1) is the top of E and z0 the bottom.
  CycleSimplex a{ExtendedParam{x, p, q1, std::nullopt}, 1, edge_pair_index(1, 3),
                 edge_pair_index(0, 3)};
  CycleSimplex b{ExtendedParam{1.0 / x, -p, q2, std::nullopt}, 1, edge_pair_index(1, 3),
                 edge_pair_index(0, 3)};
  return {a, b};
}

}  // namespace ebloch
