#include "ebloch/ideal_geometry.hpp"

#include <cmath>
#include <numbers>

namespace ebloch {

namespace {

constexpr double kPi = std::numbers::pi;
const std::complex<double> kPiI(0.0, kPi);

bool same_point(const ProjectivePoint& a, const ProjectivePoint& b) {
  if (a.infinite || b.infinite) return a.infinite && b.infinite;
  return a.value == b.value;
}

// Difference factor; nullopt stands for a factor carrying infinity.
std::optional<std::complex<double>> diff(const ProjectivePoint& a, const ProjectivePoint& b) {
  if (a.infinite || b.infinite) return std::nullopt;
  return a.value - b.value;
}

}  // namespace

std::complex<double> cross_ratio(const ProjectivePoint& z1, const ProjectivePoint& z2,
                                 const ProjectivePoint& z3, const ProjectivePoint& z4) {
  const std::array<const ProjectivePoint*, 4> pts = {&z1, &z2, &z3, &z4};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (same_point(*pts[i], *pts[j])) throw DegenerateError("cross_ratio: coincident points");

  std::complex<double> num(1.0), den(1.0);
  for (auto f : {diff(z3, z2), diff(z4, z1)}) num *= f.value_or(1.0);
  for (auto f : {diff(z3, z1), diff(z4, z2)}) den *= f.value_or(1.0);
  return num / den;
}

IdealSimplexShape::IdealSimplexShape(std::complex<double> z) : z_(z) {
  if (z == 0.0 || z == 1.0) throw DomainError("IdealSimplexShape: z must not be 0 or 1");
}

int edge_pair_index(int a, int b) {
  if (a < 0 || a > 3 || b < 0 || b > 3 || a == b) {
    throw ContractViolation("edge_pair_index: not an edge of a tetrahedron");
  }
  if (a > b) std::swap(a, b);
  if ((a == 0 && b == 1) || (a == 2 && b == 3)) return 0;
  if ((a == 1 && b == 2) || (a == 0 && b == 3)) return 1;
  return 2;
}

std::complex<double> edge_parameter(const IdealSimplexShape& shape, int a, int b) {
  switch (edge_pair_index(a, b)) {
    case 0: return shape.z();
    case 1: return shape.z_prime();
    default: return shape.z_double_prime();
  }
}

Flattening flatten(const ExtendedParam& param) {
  validate(param, BlochVersion::EP);
  const std::complex<double> z = param.numeric_z();
  const auto log_z = principal_log(z);
  const auto log_1mz = principal_log(std::complex<double>(1.0) - z);
  return Flattening(log_z + static_cast<double>(param.p) * kPiI,
                    -log_1mz + static_cast<double>(param.q) * kPiI);
}

ExtendedParam unflatten(const Flattening& w, double tol) {
  const std::complex<double> e0 = std::exp(w.w0);
  const std::complex<double> e1 = std::exp(-w.w1);
  // z = s e^{w0} with 1 - z = t e^{-w1}, s, t = +/-1.
  std::complex<double> best_z;
  double best_err = INFINITY;
  for (double s : {1.0, -1.0}) {
    const std::complex<double> z = s * e0;
    for (double t : {1.0, -1.0}) {
      const double err = std::abs(1.0 - z - t * e1) / (1.0 + std::abs(e1));
      if (err < best_err) {
        best_err = err;
        best_z = z;
      }
    }
  }
  if (best_err > tol) throw ContractViolation("unflatten: exp(w0), exp(-w1) do not fit a shape");
  if (best_z == 0.0 || best_z == 1.0) throw DomainError("unflatten: degenerate shape");

  const double p = ((w.w0 - principal_log(best_z)) / kPiI).real();
  const double q = ((w.w1 + principal_log(1.0 - best_z)) / kPiI).real();
  if (std::abs(p - std::round(p)) > tol || std::abs(q - std::round(q)) > tol) {
    throw ContractViolation("unflatten: branch indices are not integers");
  }
  ExtendedParam out{best_z, std::llround(p), std::llround(q), std::nullopt};
  if (best_z.imag() == 0.0 && (best_z.real() < 0.0 || best_z.real() > 1.0)) {
    // Side of the cut chosen so that the principal logs above are reproduced.
    out.cut_side = CutSide::Above;
  }
  return out;
}

std::array<std::complex<double>, 5> five_point_shapes(std::complex<double> x,
                                                      std::complex<double> y) {
  if (x == y) throw DegenerateError("five_point_shapes: x == y");
  for (auto v : {x, y}) {
    if (v == 0.0 || v == 1.0) throw DegenerateError("five_point_shapes: x, y must avoid 0 and 1");
  }
  const std::complex<double> one(1.0);
  std::array<std::complex<double>, 5> out = {x, y, y / x, (one - one / x) / (one - one / y),
                                             (one - x) / (one - y)};
  for (auto v : out) {
    if (std::abs(v) < 1e-300 || std::abs(v - one) < 1e-15) {
      throw DegenerateError("five_point_shapes: a shape hits 0 or 1");
    }
  }
  return out;
}

const std::array<std::string, 10>& five_point_edge_names() {
  static const std::array<std::string, 10> names = {"z0z1", "z1z2", "z2z3", "z3z4", "z4z0",
                                                    "z0z2", "z1z3", "z2z4", "z3z0", "z4z1"};
  return names;
}

const std::array<std::pair<int, int>, 10>& five_point_edges() {
  static const std::array<std::pair<int, int>, 10> edges = {
      {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}, {1, 3}, {2, 4}, {3, 0}, {4, 1}}};
  return edges;
}

namespace {

// Position of point v inside Delta_i (points other than i, in order).
int local_index(int i, int v) { return v < i ? v : v - 1; }

template <typename F>
void for_each_edge_term(F&& f) {
  const auto& edges = five_point_edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [a, b] = edges[e];
    for (int i = 0; i < 5; ++i) {
      if (i == a || i == b) continue;
      f(e, i, edge_pair_index(local_index(i, a), local_index(i, b)), i % 2 == 0 ? 1 : -1);
    }
  }
}

}  // namespace

std::array<std::complex<double>, 10> five_point_edge_conditions(
    const std::array<Flattening, 5>& flats) {
  std::array<std::complex<double>, 10> out{};
  for_each_edge_term([&](std::size_t e, int i, int pair, int sign) {
    out[e] += static_cast<double>(sign) * flats[static_cast<std::size_t>(i)][pair];
  });
  return out;
}

IntMatrix five_point_edge_relation_matrix() {
  IntMatrix m = IntMatrix::Zero(10, 10);
  for_each_edge_term([&](std::size_t e, int i, int pair, int sign) {
    const auto row = static_cast<Eigen::Index>(e);
    // pi*i part of w0, w1, w2 is p, q, -p-q.
    if (pair == 0 || pair == 2) m(row, i) += pair == 0 ? sign : -sign;
    if (pair == 1 || pair == 2) m(row, 5 + i) += pair == 1 ? sign : -sign;
  });
  return m;
}

IntMatrix v_family_matrix() {
  // Columns p0, p1, q0, q1, q2; rows p0..p4, q0..q4.
  IntMatrix v(10, 5);
  // clang-format off
  v << 1, 0,  0, 0, 0,   // p0
       0, 1,  0, 0, 0,   // p1
      -1, 1,  0, 0, 0,   // p2 = p1 - p0
      -1, 1, -1, 1, 0,   // p3 = p1 - p0 + q1 - q0
       0, 0, -1, 1, 0,   // p4 = q1 - q0
       0, 0,  1, 0, 0,   // q0
       0, 0,  0, 1, 0,   // q1
       0, 0,  0, 0, 1,   // q2
       0, 0,  0, -1, 1,  // q3 = q2 - q1
      -1, 0,  0, -1, 1;  // q4 = q2 - q1 - p0
  // clang-format on
  return v;
}

}  // namespace ebloch
