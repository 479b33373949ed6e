#pragma once

// Formal elements of the extended pre-Bloch group (EP and EEP versions) and
// the homomorphisms (R, nu, epsilon) that can actually be computed on them.
// Identities are only ever checked through these maps; equality in the group
// itself is not decidable here.

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ebloch/formal_wedge.hpp"
#include "ebloch/polylog.hpp"

namespace ebloch {

/// Which side of a real cut a point sits on: r+0i or r-0i.
enum class CutSide { Above, Below };

/// A point (z; p, q) of the Z x Z cover of C - {0, 1}.
struct ExtendedParam {
  std::complex<double> z;
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::optional<CutSide> cut_side;

  /// Point used for numeric evaluation: z itself, or z +/- i*1e-12 when the
  /// point carries a cut-side tag.
  std::complex<double> numeric_z() const;

  friend bool operator==(const ExtendedParam&, const ExtendedParam&) = default;
};

/// Strict weak order used to key formal sums (lexicographic on re, im, p, q,
/// side).
struct ExtendedParamLess {
  bool operator()(const ExtendedParam& a, const ExtendedParam& b) const;
};

inline constexpr double kCutPerturbation = 1e-12;

/// Throws DomainError / ContractViolation when the invariants fail.
void validate(const ExtendedParam& param, BlochVersion version);

std::string to_string(const ExtendedParam& param);

/// Finite integer combination of generators [z, p, q].
class EBElement {
 public:
  using Terms = std::map<ExtendedParam, std::int64_t, ExtendedParamLess>;

  explicit EBElement(BlochVersion version = BlochVersion::EP) : version_(version) {}

  static EBElement generator(const ExtendedParam& param,
                             BlochVersion version = BlochVersion::EP,
                             std::int64_t coefficient = 1);

  BlochVersion version() const { return version_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(const ExtendedParam& param, std::int64_t coefficient);
  void add(std::complex<double> z, std::int64_t p, std::int64_t q, std::int64_t coefficient) {
    add(ExtendedParam{z, p, q, std::nullopt}, coefficient);
  }

  EBElement& operator+=(const EBElement& rhs);
  EBElement& operator-=(const EBElement& rhs);
  EBElement& operator*=(std::int64_t k);
  friend EBElement operator+(EBElement a, const EBElement& b) { return a += b; }
  friend EBElement operator-(EBElement a, const EBElement& b) { return a -= b; }
  friend EBElement operator*(std::int64_t k, EBElement a) { return a *= k; }

  std::string to_string() const;

 private:
  BlochVersion version_;
  Terms terms_;
};

// ---------------------------------------------------------------------------
// Five-term relation.

/// Base point (x, y) with free offsets. The remaining indices follow the
/// lifting pattern V.
struct FiveTermTuple {
  std::complex<double> x;
  std::complex<double> y;
  std::int64_t p0 = 0;
  std::int64_t p1 = 0;
  std::int64_t q0 = 0;
  std::int64_t q1 = 0;
  std::int64_t q2 = 0;

  /// (p_i, q_i) for i = 0..4.
  std::array<std::pair<std::int64_t, std::int64_t>, 5> indices() const;
};

/// Im x > 0, Im y > 0 and x strictly inside the triangle (0, 1, y).
bool in_ft_plus(std::complex<double> x, std::complex<double> y);

/// sum_i (-1)^i [x_i, p_i, q_i]. In EEP mode every index is doubled.
EBElement five_term_instance(const FiveTermTuple& t, BlochVersion version = BlochVersion::EP);

/// [z,p,q] + [z,p',q'] - [z,p,q'] - [z,p',q].
EBElement transfer_instance(std::complex<double> z, std::int64_t p, std::int64_t q,
                            std::int64_t p2, std::int64_t q2,
                            BlochVersion version = BlochVersion::EP);

/// Real z outside [0, 1] needs a cut side.
EBElement chi(std::complex<double> z, std::optional<CutSide> side = std::nullopt);
EBElement chi_hat(std::complex<double> z, std::optional<CutSide> side = std::nullopt);

/// [z,1,1] + [z,0,0] - [z,1,0] - [z,0,1].
EBElement kappa_element(std::complex<double> z);

/// pq[z,1,1] - (pq-p)[z,1,0] - (pq-q)[z,0,1] + (pq-p-q+1)[z,0,0].
EBElement super_transfer_rhs(std::complex<double> z, std::int64_t p, std::int64_t q);

/// [x,p,q] + [1-x,-q,-p] - 2[1/2,0,0].
EBElement one_minus_x_relation(std::complex<double> x, std::int64_t p, std::int64_t q);

/// Which of the three "three equations" relations to build.
enum class ThreeEquationsKind { VaryQ, VaryP, Diagonal };

/// Difference LHS - RHS of one of
///   [x,p,q]-[x,p,q']       = [x,p,q-1]-[x,p,q'-1]          (VaryQ, other = q')
///   [x,p,q]-[x,p',q]       = [x,p-1,q]-[x,p'-1,q]          (VaryP, other = p')
///   [x,p,q]-[x,p+s,q-s]    = [x,p+1,q-1]-[x,p+s+1,q-s-1]   (Diagonal, other = s)
EBElement three_equations_relation(ThreeEquationsKind kind, std::complex<double> x,
                                   std::int64_t p, std::int64_t q, std::int64_t other);

/// LHS - RHS of
///   [x,p0,q0]-[y,p1,q1]+[y/x,p2,q2] = [x,p0,q0-1]-[y,p1,q1-1]+[y/x,p2,q2-1].
EBElement homo_relation(std::complex<double> x, std::complex<double> y, std::int64_t p0,
                        std::int64_t p1, std::int64_t p2, std::int64_t q0, std::int64_t q1,
                        std::int64_t q2);

// ---------------------------------------------------------------------------
// Computable homomorphisms.

/// sum coeff * R(generator), reduced mod pi^2 (EP) or 2 pi^2 (EEP).
ModPiSquared r_of_element(const EBElement& e);

/// sum coeff * p * q mod 2.
int epsilon_parity(const EBElement& e);

/// Named multiplicatively independent values used to write logarithms
/// symbolically. Every generator z handed to nu_symbolic must satisfy
/// +/- z = prod b_k^{e_k} and likewise for 1 - z.
class SymbolBasis {
 public:
  static constexpr const char* kPiI = "pi_i";

  SymbolBasis() = default;
  explicit SymbolBasis(std::vector<std::pair<std::string, std::complex<double>>> symbols,
                       int max_exponent = 2);

  /// log_x, log_1mx, log_y, log_1my, log_xmy.
  static SymbolBasis five_term(std::complex<double> x, std::complex<double> y);
  /// log_x, log_1mx.
  static SymbolBasis single(std::complex<double> x);

  const std::vector<std::pair<std::string, std::complex<double>>>& symbols() const {
    return symbols_;
  }

  /// Principal log of w as sum e_k log(b_k) + c * pi_i with integer e, c.
  /// Throws ConsistencyError when w is not in the multiplicative span or the
  /// pi*i correction is not an integer within 1e-6.
  SymbolVector log_of(std::complex<double> w) const;

 private:
  std::vector<std::pair<std::string, std::complex<double>>> symbols_;
  std::vector<std::complex<double>> logs_;
  int max_exponent_ = 2;
};

/// sum coeff * (log z + p pi i) ^ (-log(1-z) + q pi i), exactly.
WedgeExpr nu_symbolic(const EBElement& e, const SymbolBasis& basis);
inline WedgeExpr nu_symbolic(const EBElement& e, std::complex<double> x, std::complex<double> y) {
  return nu_symbolic(e, SymbolBasis::five_term(x, y));
}

}  // namespace ebloch
