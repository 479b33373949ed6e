#include "ebloch/extended_bloch.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

namespace ebloch {

namespace {

constexpr double kPi = std::numbers::pi;

bool real_outside_unit_interval(std::complex<double> z) {
  return z.imag() == 0.0 && (z.real() < 0.0 || z.real() > 1.0);
}

}  // namespace

std::complex<double> ExtendedParam::numeric_z() const {
  if (!cut_side) return z;
  return {z.real(), *cut_side == CutSide::Above ? kCutPerturbation : -kCutPerturbation};
}

bool ExtendedParamLess::operator()(const ExtendedParam& a, const ExtendedParam& b) const {
  const int sa = a.cut_side ? (*a.cut_side == CutSide::Above ? 1 : 2) : 0;
  const int sb = b.cut_side ? (*b.cut_side == CutSide::Above ? 1 : 2) : 0;
  return std::tuple(a.z.real(), a.z.imag(), a.p, a.q, sa) <
         std::tuple(b.z.real(), b.z.imag(), b.p, b.q, sb);
}

void validate(const ExtendedParam& param, BlochVersion version) {
  if (param.z == std::complex<double>(0.0) || param.z == std::complex<double>(1.0)) {
    throw DomainError("extended parameter: z must not be 0 or 1");
  }
  if (real_outside_unit_interval(param.z) != param.cut_side.has_value()) {
    throw ContractViolation(
        "extended parameter: cut side tag is required exactly for real z outside [0, 1]");
  }
  if (version == BlochVersion::EEP && (param.p % 2 != 0 || param.q % 2 != 0)) {
    throw ContractViolation("extended parameter: EEP generators need even p and q");
  }
}

std::string to_string(const ExtendedParam& param) {
  std::ostringstream out;
  out.precision(17);
  out << "[" << param.z.real() << (param.z.imag() < 0 ? "" : "+") << param.z.imag() << "i";
  if (param.cut_side) out << (*param.cut_side == CutSide::Above ? "+0i" : "-0i");
  out << ", " << param.p << ", " << param.q << "]";
  return out.str();
}

EBElement EBElement::generator(const ExtendedParam& param, BlochVersion version,
                               std::int64_t coefficient) {
  EBElement e(version);
  e.add(param, coefficient);
  return e;
}

void EBElement::add(const ExtendedParam& param, std::int64_t coefficient) {
  validate(param, version_);
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(param, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

EBElement& EBElement::operator+=(const EBElement& rhs) {
  if (rhs.version_ != version_) throw ContractViolation("EBElement: mixing EP and EEP");
  for (const auto& [param, k] : rhs.terms_) add(param, k);
  return *this;
}

EBElement& EBElement::operator-=(const EBElement& rhs) {
  if (rhs.version_ != version_) throw ContractViolation("EBElement: mixing EP and EEP");
  for (const auto& [param, k] : rhs.terms_) add(param, -k);
  return *this;
}

EBElement& EBElement::operator*=(std::int64_t k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [param, c] : terms_) c *= k;
  return *this;
}

std::string EBElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [param, k] : terms_) {
    if (!first) out << (k < 0 ? " - " : " + ");
    else if (k < 0) out << "-";
    first = false;
    const std::int64_t mag = k < 0 ? -k : k;
    if (mag != 1) out << mag << "*";
    out << ebloch::to_string(param);
  }
  return out.str();
}

// ---------------------------------------------------------------------------

std::array<std::pair<std::int64_t, std::int64_t>, 5> FiveTermTuple::indices() const {
  return {{{p0, q0},
           {p1, q1},
           {p1 - p0, q2},
           {p1 - p0 + q1 - q0, q2 - q1},
           {q1 - q0, q2 - q1 - p0}}};
}

bool in_ft_plus(std::complex<double> x, std::complex<double> y) {
  if (!(x.imag() > 0.0) || !(y.imag() > 0.0)) return false;
  // x = a * 1 + b * y with a, b > 0 and a + b < 1.
  const double b = x.imag() / y.imag();
  const double a = x.real() - b * y.real();
  return a > 0.0 && b > 0.0 && a + b < 1.0;
}

EBElement five_term_instance(const FiveTermTuple& t, BlochVersion version) {
  if (!in_ft_plus(t.x, t.y)) {
    throw DomainError("five_term_instance: base point (x, y) is not in FT+");
  }
  const std::complex<double> one(1.0);
  const std::array<std::complex<double>, 5> shapes = {
      t.x, t.y, t.y / t.x, (one - one / t.x) / (one - one / t.y), (one - t.x) / (one - t.y)};
  const auto idx = t.indices();
  const std::int64_t scale = version == BlochVersion::EEP ? 2 : 1;
  EBElement e(version);
  for (std::size_t i = 0; i < 5; ++i) {
    e.add(shapes[i], scale * idx[i].first, scale * idx[i].second, i % 2 == 0 ? 1 : -1);
  }
  return e;
}

EBElement transfer_instance(std::complex<double> z, std::int64_t p, std::int64_t q,
                            std::int64_t p2, std::int64_t q2, BlochVersion version) {
  EBElement e(version);
  e.add(z, p, q, 1);
  e.add(z, p2, q2, 1);
  e.add(z, p, q2, -1);
  e.add(z, p2, q, -1);
  return e;
}

EBElement chi(std::complex<double> z, std::optional<CutSide> side) {
  EBElement e(BlochVersion::EP);
  e.add(ExtendedParam{z, 0, 1, side}, 1);
  e.add(ExtendedParam{z, 0, 0, side}, -1);
  return e;
}

EBElement chi_hat(std::complex<double> z, std::optional<CutSide> side) {
  EBElement e(BlochVersion::EEP);
  e.add(ExtendedParam{z, 0, 2, side}, 1);
  e.add(ExtendedParam{z, 0, 0, side}, -1);
  return e;
}

EBElement kappa_element(std::complex<double> z) {
  EBElement e(BlochVersion::EP);
  e.add(z, 1, 1, 1);
  e.add(z, 0, 0, 1);
  e.add(z, 1, 0, -1);
  e.add(z, 0, 1, -1);
  return e;
}

EBElement super_transfer_rhs(std::complex<double> z, std::int64_t p, std::int64_t q) {
  const std::int64_t pq = p * q;
  EBElement e(BlochVersion::EP);
  e.add(z, 1, 1, pq);
  e.add(z, 1, 0, -(pq - p));
  e.add(z, 0, 1, -(pq - q));
  e.add(z, 0, 0, pq - p - q + 1);
  return e;
}

EBElement one_minus_x_relation(std::complex<double> x, std::int64_t p, std::int64_t q) {
  EBElement e(BlochVersion::EP);
  e.add(x, p, q, 1);
  e.add(std::complex<double>(1.0) - x, -q, -p, 1);
  e.add({0.5, 0.0}, 0, 0, -2);
  return e;
}

EBElement three_equations_relation(ThreeEquationsKind kind, std::complex<double> x,
                                   std::int64_t p, std::int64_t q, std::int64_t other) {
  EBElement e(BlochVersion::EP);
  switch (kind) {
    case ThreeEquationsKind::VaryQ:
      e.add(x, p, q, 1);
      e.add(x, p, other, -1);
      e.add(x, p, q - 1, -1);
      e.add(x, p, other - 1, 1);
      break;
    case ThreeEquationsKind::VaryP:
      e.add(x, p, q, 1);
      e.add(x, other, q, -1);
      e.add(x, p - 1, q, -1);
      e.add(x, other - 1, q, 1);
      break;
    case ThreeEquationsKind::Diagonal: {
      const std::int64_t s = other;
      e.add(x, p, q, 1);
      e.add(x, p + s, q - s, -1);
      e.add(x, p + 1, q - 1, -1);
      e.add(x, p + s + 1, q - s - 1, 1);
      break;
    }
  }
  return e;
}

EBElement homo_relation(std::complex<double> x, std::complex<double> y, std::int64_t p0,
                        std::int64_t p1, std::int64_t p2, std::int64_t q0, std::int64_t q1,
                        std::int64_t q2) {
  if (p2 != p1 - p0) throw ContractViolation("homo_relation: needs p2 = p1 - p0");
  EBElement e(BlochVersion::EP);
  const std::complex<double> yx = y / x;
  e.add(x, p0, q0, 1);
  e.add(y, p1, q1, -1);
  e.add(yx, p2, q2, 1);
  e.add(x, p0, q0 - 1, -1);
  e.add(y, p1, q1 - 1, 1);
  e.add(yx, p2, q2 - 1, -1);
  return e;
}

// ---------------------------------------------------------------------------

ModPiSquared r_of_element(const EBElement& e) {
  std::complex<double> sum(0.0);
  for (const auto& [param, k] : e.terms()) {
    sum += static_cast<double>(k) * lifted_rogers_raw(param.numeric_z(), param.p, param.q);
  }
  return reduce_mod(sum, modulus_for(e.version()));
}

int epsilon_parity(const EBElement& e) {
  std::int64_t sum = 0;
  for (const auto& [param, k] : e.terms()) {
    sum += (k % 2) * ((param.p % 2) * (param.q % 2));
  }
  return static_cast<int>(((sum % 2) + 2) % 2);
}

SymbolBasis::SymbolBasis(std::vector<std::pair<std::string, std::complex<double>>> symbols,
                         int max_exponent)
    : symbols_(std::move(symbols)), max_exponent_(max_exponent) {
  for (const auto& [name, value] : symbols_) {
    if (name == kPiI) throw ContractViolation("SymbolBasis: pi_i is reserved");
    logs_.push_back(principal_log(value));
  }
}

SymbolBasis SymbolBasis::five_term(std::complex<double> x, std::complex<double> y) {
  const std::complex<double> one(1.0);
  return SymbolBasis({{"log_x", x},
                      {"log_1mx", one - x},
                      {"log_y", y},
                      {"log_1my", one - y},
                      {"log_xmy", x - y}});
}

SymbolBasis SymbolBasis::single(std::complex<double> x) {
  return SymbolBasis({{"log_x", x}, {"log_1mx", std::complex<double>(1.0) - x}});
}

SymbolVector SymbolBasis::log_of(std::complex<double> w) const {
  constexpr double kMatchTol = 1e-8;
  constexpr double kIntegerTol = 1e-6;
  const std::complex<double> log_w = principal_log(w);
  const std::size_t n = symbols_.size();
  const int span = 2 * max_exponent_ + 1;

  std::size_t combos = 1;
  for (std::size_t i = 0; i < n; ++i) combos *= static_cast<std::size_t>(span);

  // Enumerate exponent vectors; keep the one with smallest l1 norm.
  std::optional<std::vector<int>> best;
  int best_norm = 0;
  std::vector<int> exps(n);
  for (std::size_t code = 0; code < combos; ++code) {
    std::size_t c = code;
    int norm = 0;
    std::complex<double> s(0.0);
    for (std::size_t k = 0; k < n; ++k) {
      exps[k] = static_cast<int>(c % span) - max_exponent_;
      c /= span;
      norm += std::abs(exps[k]);
      s += static_cast<double>(exps[k]) * logs_[k];
    }
    const std::complex<double> diff = log_w - s;
    if (std::abs(diff.real()) > kMatchTol * (1.0 + std::abs(log_w.real()))) continue;
    const double turns = diff.imag() / kPi;
    if (std::abs(turns - std::round(turns)) > kMatchTol) continue;
    if (!best || norm < best_norm) {
      best = exps;
      best_norm = norm;
    }
  }
  if (!best) {
    std::ostringstream msg;
    msg << "SymbolBasis: " << w << " is not +/- a product of basis powers";
    throw ConsistencyError(msg.str());
  }

  SymbolVector out;
  std::complex<double> s(0.0);
  for (std::size_t k = 0; k < n; ++k) {
    out.add(symbols_[k].first, (*best)[k]);
    s += static_cast<double>((*best)[k]) * logs_[k];
  }
  const double c = (log_w - s).imag() / kPi;
  if (std::abs(c - std::round(c)) > kIntegerTol) {
    throw ConsistencyError("SymbolBasis: pi*i correction is not an integer");
  }
  out.add(kPiI, static_cast<long long>(std::llround(c)));
  return out;
}

WedgeExpr nu_symbolic(const EBElement& e, const SymbolBasis& basis) {
  WedgeExpr out;
  for (const auto& [param, k] : e.terms()) {
    const std::complex<double> z = param.numeric_z();
    SymbolVector first = basis.log_of(z);
    first.add(SymbolBasis::kPiI, static_cast<long long>(param.p));
    SymbolVector second = -basis.log_of(std::complex<double>(1.0) - z);
    second.add(SymbolBasis::kPiI, static_cast<long long>(param.q));
    out += BigInt(static_cast<long long>(k)) * wedge(first, second);
  }
  return out;
}

}  // namespace ebloch
