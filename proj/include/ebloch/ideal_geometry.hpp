#pragma once

// Ideal simplices with their shape triples (z, z', z'') and flattenings,
// plus the five-point configuration behind the five-term relation.

#include <array>
#include <complex>
#include <string>

#include "ebloch/extended_bloch.hpp"
#include "ebloch/integer_matrix.hpp"

namespace ebloch {

/// A point of the Riemann sphere.
struct ProjectivePoint {
  std::complex<double> value;
  bool infinite = false;

  static ProjectivePoint infinity() { return {{0.0, 0.0}, true}; }
  ProjectivePoint() = default;
  ProjectivePoint(std::complex<double> z, bool inf = false) : value(z), infinite(inf) {}
  ProjectivePoint(double x) : value(x, 0.0) {}
};

/// (z3-z2)(z4-z1) / ((z3-z1)(z4-z2)); a point at infinity cancels from the
/// one numerator and one denominator factor it appears in.
std::complex<double> cross_ratio(const ProjectivePoint& z1, const ProjectivePoint& z2,
                                 const ProjectivePoint& z3, const ProjectivePoint& z4);

class IdealSimplexShape {
 public:
  explicit IdealSimplexShape(std::complex<double> z);
  std::complex<double> z() const { return z_; }
  std::complex<double> z_prime() const { return 1.0 / (1.0 - z_); }
  std::complex<double> z_double_prime() const { return 1.0 - 1.0 / z_; }

 private:
  std::complex<double> z_;
};

/// 01 and 23 -> 0 (z), 12 and 03 -> 1 (z'), 02 and 13 -> 2 (z'').
int edge_pair_index(int a, int b);

std::complex<double> edge_parameter(const IdealSimplexShape& shape, int a, int b);

/// Log-parameters of the three edge pairs; w2 is derived so the sum is 0.
struct Flattening {
  std::complex<double> w0;
  std::complex<double> w1;
  std::complex<double> w2;

  Flattening() = default;
  Flattening(std::complex<double> a, std::complex<double> b) : w0(a), w1(b), w2(-a - b) {}

  std::complex<double> operator[](int k) const { return k == 0 ? w0 : (k == 1 ? w1 : w2); }
};

/// (log z + p pi i, -log(1-z) + q pi i, log(1-z) - log z - (p+q) pi i).
Flattening flatten(const ExtendedParam& param);

/// Inverse of flatten. Throws ContractViolation when exp(w0), exp(-w1) do
/// not fit a shape or the branch indices are not integers within tol.
ExtendedParam unflatten(const Flattening& w, double tol = 1e-9);

/// (x, y, y/x, (1-1/x)/(1-1/y), (1-x)/(1-y)).
std::array<std::complex<double>, 5> five_point_shapes(std::complex<double> x,
                                                      std::complex<double> y);

/// Names of the ten edges z_a z_b, in reporting order.
const std::array<std::string, 10>& five_point_edge_names();
/// The vertex pairs in the same order.
const std::array<std::pair<int, int>, 10>& five_point_edges();

/// Signed sums sum_i (-1)^i w(Delta_i, edge) over the three simplices that
/// contain each edge; Delta_i spans the points other than i.
std::array<std::complex<double>, 10> five_point_edge_conditions(
    const std::array<Flattening, 5>& flats);

/// The pi*i part of five_point_edge_conditions as integer rows over the
/// unknowns (p0..p4, q0..q4).
IntMatrix five_point_edge_relation_matrix();

/// Columns: images of the free offsets (p0, p1, q0, q1, q2) under V, in the
/// coordinates (p0..p4, q0..q4).
IntMatrix v_family_matrix();

}  // namespace ebloch
