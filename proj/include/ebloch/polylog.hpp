#pragma once

// Branch-correct logarithms and the dilogarithm family.
//
// Every function uses the principal branch, arg in (-pi, pi]. Arguments that
// lie exactly on a branch cut are rejected with DomainError; callers that
// need cut-side semantics work at the symbolic level (extended_bloch).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

#include "ebloch/errors.hpp"

namespace ebloch {

template <typename Real>
using Complex = std::complex<Real>;

namespace detail {

// B_{2k} for k = 1..15.
inline constexpr std::array<long double, 15> kBernoulliEven = {
    1.0L / 6.0L,
    -1.0L / 30.0L,
    1.0L / 42.0L,
    -1.0L / 30.0L,
    5.0L / 66.0L,
    -691.0L / 2730.0L,
    7.0L / 6.0L,
    -3617.0L / 510.0L,
    43867.0L / 798.0L,
    -174611.0L / 330.0L,
    854513.0L / 138.0L,
    -236364091.0L / 2730.0L,
    8553103.0L / 6.0L,
    -23749461029.0L / 870.0L,
    8615841276005.0L / 14322.0L,
};

// B_{2k} / (2k+1)!, the coefficients of the dilogarithm in u = -log(1-z).
inline constexpr std::array<long double, 15> kDilogBernoulliCoefficients = [] {
  std::array<long double, 15> out{};
  long double factorial = 1.0L;  // (2k+1)!
  for (std::size_t k = 1; k <= out.size(); ++k) {
    factorial *= static_cast<long double>(2 * k) * static_cast<long double>(2 * k + 1);
    out[k - 1] = kBernoulliEven[k - 1] / factorial;
  }
  return out;
}();

template <typename Real>
constexpr Real pi_squared() {
  return std::numbers::pi_v<Real> * std::numbers::pi_v<Real>;
}

template <typename Real>
Complex<Real> dilog_maclaurin(Complex<Real> z) {
  const Real eps = std::numeric_limits<Real>::epsilon() / 4;
  Complex<Real> power = z;
  Complex<Real> sum = z;
  for (int k = 2; k < 400; ++k) {
    power *= z;
    const Complex<Real> term = power / static_cast<Real>(k * k);
    sum += term;
    if (std::abs(term) <= eps * std::abs(sum)) break;
  }
  return sum;
}

// Valid for |u| < 2*pi. With |z| <= 1 and Re z <= 1/2 we have |u| < 1.8.
template <typename Real>
Complex<Real> dilog_bernoulli(Complex<Real> z) {
  const Real eps = std::numeric_limits<Real>::epsilon() / 4;
  const Complex<Real> u = -std::log(Complex<Real>(1) - z);
  const Complex<Real> u2 = u * u;
  Complex<Real> sum = u - u2 / Real(4);
  Complex<Real> power = u;
  for (long double c : kDilogBernoulliCoefficients) {
    power *= u2;
    const Complex<Real> term = static_cast<Real>(c) * power;
    sum += term;
    if (std::abs(term) <= eps * std::abs(sum)) break;
  }
  return sum;
}

// |z| <= 1, Re z <= 1/2.
template <typename Real>
Complex<Real> dilog_core(Complex<Real> z) {
  if (std::norm(z) <= Real(0.25)) return dilog_maclaurin(z);
  return dilog_bernoulli(z);
}

// |z| <= 1, z != 1.
template <typename Real>
Complex<Real> dilog_unit_disk(Complex<Real> z) {
  if (z.real() <= Real(0.5)) return dilog_core(z);
  const Complex<Real> w = Complex<Real>(1) - z;
  return pi_squared<Real>() / Real(6) - std::log(z) * std::log(w) - dilog_core(w);
}

template <typename Real>
bool on_upper_cut(Complex<Real> z) {  // [1, inf)
  return z.imag() == Real(0) && z.real() >= Real(1);
}

template <typename Real>
bool on_lower_cut(Complex<Real> z) {  // (-inf, 0]
  return z.imag() == Real(0) && z.real() <= Real(0);
}

}  // namespace detail

/// Principal logarithm, imaginary part in (-pi, pi]. A negative real argument
/// maps to +i*pi regardless of the sign of its zero imaginary part.
template <typename Real>
Complex<Real> principal_log(Complex<Real> z) {
  if (z == Complex<Real>(0)) throw DomainError("principal_log: argument is zero");
  if (z.imag() == Real(0)) {
    if (z.real() > Real(0)) return {std::log(z.real()), Real(0)};
    return {std::log(-z.real()), std::numbers::pi_v<Real>};
  }
  return std::log(z);
}

/// Li_2(z) = -int_0^z log(1-t)/t dt on the principal sheet (cut [1, inf)).
template <typename Real>
Complex<Real> dilog(Complex<Real> z) {
  using detail::pi_squared;
  if (detail::on_upper_cut(z)) throw DomainError("dilog: argument on the cut [1, inf)");
  if (z == Complex<Real>(0)) return Complex<Real>(0);
  if (std::norm(z) <= Real(1)) return detail::dilog_unit_disk(z);
  // Inversion: Li2(z) + Li2(1/z) = -pi^2/6 - log^2(-z)/2.
  const Complex<Real> log_minus_z = principal_log(-z);
  return -pi_squared<Real>() / Real(6) - log_minus_z * log_minus_z / Real(2) -
         detail::dilog_unit_disk(Complex<Real>(1) / z);
}

/// Rogers dilogarithm: log(z) log(1-z) / 2 + Li_2(z).
template <typename Real>
Complex<Real> rogers(Complex<Real> z) {
  if (detail::on_upper_cut(z) || detail::on_lower_cut(z)) {
    throw DomainError("rogers: argument on (-inf, 0] or [1, inf)");
  }
  return principal_log(z) * principal_log(Complex<Real>(1) - z) / Real(2) + dilog(z);
}

/// Bloch-Wigner function D(z) = Im Li_2(z) + arg(1-z) log|z|.
template <typename Real>
Real bloch_wigner(Complex<Real> z) {
  if (z == Complex<Real>(0) || z == Complex<Real>(1)) {
    throw DomainError("bloch_wigner: argument in {0, 1}");
  }
  if (z.imag() == Real(0)) return Real(0);
  return dilog(z).imag() + std::arg(Complex<Real>(1) - z) * std::log(std::abs(z));
}

// ---------------------------------------------------------------------------
// Values modulo pi^2 or 2 pi^2.

enum class Modulus { PiSquared, TwoPiSquared };

inline double modulus_value(Modulus m) {
  const double pi2 = detail::pi_squared<double>();
  return m == Modulus::PiSquared ? pi2 : 2 * pi2;
}

/// A complex number modulo a real lattice (pi^2 Z or 2 pi^2 Z). The stored
/// value is the canonical representative, real part in [0, modulus).
class ModPiSquared {
 public:
  static constexpr double kDefaultTolerance = 1e-9;

  ModPiSquared() = default;
  ModPiSquared(std::complex<double> value, Modulus modulus);

  std::complex<double> value() const { return value_; }
  Modulus modulus() const { return modulus_; }

  /// Distance from (this - other) to the lattice; imaginary parts enter
  /// unreduced.
  double distance(const ModPiSquared& other) const;
  bool equals(const ModPiSquared& other, double tol = kDefaultTolerance) const {
    return distance(other) <= tol;
  }
  bool is_zero(double tol = kDefaultTolerance) const {
    return equals(ModPiSquared({0.0, 0.0}, modulus_), tol);
  }

  /// Representative with real part in (-modulus/2, modulus/2].
  std::complex<double> centered() const;

  ModPiSquared operator+(const ModPiSquared& rhs) const;
  ModPiSquared operator-(const ModPiSquared& rhs) const;

 private:
  std::complex<double> value_{0.0, 0.0};
  Modulus modulus_ = Modulus::PiSquared;
};

ModPiSquared reduce_mod(std::complex<double> value, Modulus modulus);

inline double reduce_real(double x, double m) {
  double r = std::fmod(x, m);
  if (r < 0) r += m;
  if (r >= m) r -= m;
  return r;
}

inline ModPiSquared::ModPiSquared(std::complex<double> value, Modulus modulus)
    : value_(reduce_real(value.real(), modulus_value(modulus)), value.imag()),
      modulus_(modulus) {}

inline ModPiSquared reduce_mod(std::complex<double> value, Modulus modulus) {
  return ModPiSquared(value, modulus);
}

inline double ModPiSquared::distance(const ModPiSquared& other) const {
  if (modulus_ != other.modulus_) {
    throw ContractViolation("ModPiSquared: comparing values with different moduli");
  }
  const double m = modulus_value(modulus_);
  const double r = reduce_real(value_.real() - other.value_.real(), m);
  const double real_gap = std::min(r, m - r);
  return std::hypot(real_gap, value_.imag() - other.value_.imag());
}

inline std::complex<double> ModPiSquared::centered() const {
  const double m = modulus_value(modulus_);
  double re = value_.real();
  if (re > m / 2) re -= m;
  return {re, value_.imag()};
}

inline ModPiSquared ModPiSquared::operator+(const ModPiSquared& rhs) const {
  if (modulus_ != rhs.modulus_) throw ContractViolation("ModPiSquared: modulus mismatch");
  return ModPiSquared(value_ + rhs.value_, modulus_);
}

inline ModPiSquared ModPiSquared::operator-(const ModPiSquared& rhs) const {
  if (modulus_ != rhs.modulus_) throw ContractViolation("ModPiSquared: modulus mismatch");
  return ModPiSquared(value_ - rhs.value_, modulus_);
}

// ---------------------------------------------------------------------------
// The lifted Rogers function on the cover.

/// EP: all (p, q), values mod pi^2. EEP: even (p, q) only, values mod 2 pi^2.
enum class BlochVersion { EP, EEP };

inline Modulus modulus_for(BlochVersion version) {
  return version == BlochVersion::EP ? Modulus::PiSquared : Modulus::TwoPiSquared;
}

/// Unreduced R(z; p, q) = Rogers(z) + (pi i / 2)(p log(1-z) + q log z) - pi^2/6.
inline std::complex<double> lifted_rogers_raw(std::complex<double> z, std::int64_t p,
                                              std::int64_t q) {
  constexpr double pi = std::numbers::pi;
  const std::complex<double> half_pi_i(0.0, pi / 2);
  const auto log_z = principal_log(z);
  const auto log_1mz = principal_log(std::complex<double>(1.0) - z);
  return rogers(z) +
         half_pi_i * (static_cast<double>(p) * log_1mz + static_cast<double>(q) * log_z) -
         pi * pi / 6;
}

/// R(z; p, q) reduced modulo pi^2 (EP) or 2 pi^2 (EEP). In EEP mode p and q
/// are the actual (even) indices, so the correction term reads
/// pi i (p/2 log(1-z) + q/2 log z).
inline ModPiSquared lifted_rogers(std::complex<double> z, std::int64_t p, std::int64_t q,
                                  BlochVersion version) {
  if (version == BlochVersion::EEP && (p % 2 != 0 || q % 2 != 0)) {
    throw ContractViolation("lifted_rogers: odd index in EEP mode");
  }
  return reduce_mod(lifted_rogers_raw(z, p, q), modulus_for(version));
}

}  // namespace ebloch
