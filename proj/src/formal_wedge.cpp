#include "ebloch/formal_wedge.hpp"

#include <sstream>

namespace ebloch {

namespace {

template <typename Map, typename Key>
void accumulate(Map& terms, const Key& key, const BigInt& k) {
  if (k == 0) return;
  auto [it, inserted] = terms.try_emplace(key, k);
  if (!inserted) {
    it->second += k;
    if (it->second == 0) terms.erase(it);
  }
}

}  // namespace

SymbolVector::SymbolVector(std::initializer_list<std::pair<const std::string, BigInt>> terms) {
  for (const auto& [name, k] : terms) add(name, k);
}

SymbolVector SymbolVector::symbol(const std::string& name, const BigInt& coefficient) {
  SymbolVector v;
  v.add(name, coefficient);
  return v;
}

void SymbolVector::add(const std::string& name, const BigInt& coefficient) {
  accumulate(terms_, name, coefficient);
}

BigInt SymbolVector::coefficient(const std::string& name) const {
  auto it = terms_.find(name);
  return it == terms_.end() ? BigInt(0) : it->second;
}

SymbolVector& SymbolVector::operator+=(const SymbolVector& rhs) {
  for (const auto& [name, k] : rhs.terms_) add(name, k);
  return *this;
}

SymbolVector& SymbolVector::operator-=(const SymbolVector& rhs) {
  for (const auto& [name, k] : rhs.terms_) add(name, -k);
  return *this;
}

SymbolVector& SymbolVector::operator*=(const BigInt& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [name, c] : terms_) c *= k;
  return *this;
}

std::string SymbolVector::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, k] : terms_) {
    if (!first) out << (k < 0 ? " - " : " + ");
    else if (k < 0) out << "-";
    first = false;
    const BigInt mag = k < 0 ? BigInt(-k) : k;
    if (mag != 1) out << mag << "*";
    out << name;
  }
  return out.str();
}

void WedgeExpr::add(const std::string& s, const std::string& t, const BigInt& k) {
  if (s == t || k == 0) return;
  if (s < t) accumulate(terms_, Key{s, t}, k);
  else accumulate(terms_, Key{t, s}, BigInt(-k));
}

BigInt WedgeExpr::coefficient(const std::string& s, const std::string& t) const {
  if (s == t) return 0;
  const bool flip = t < s;
  auto it = terms_.find(flip ? Key{t, s} : Key{s, t});
  if (it == terms_.end()) return 0;
  return flip ? BigInt(-it->second) : it->second;
}

WedgeExpr& WedgeExpr::operator+=(const WedgeExpr& rhs) {
  for (const auto& [key, k] : rhs.terms_) accumulate(terms_, key, k);
  return *this;
}

WedgeExpr& WedgeExpr::operator-=(const WedgeExpr& rhs) {
  for (const auto& [key, k] : rhs.terms_) accumulate(terms_, key, BigInt(-k));
  return *this;
}

WedgeExpr& WedgeExpr::operator*=(const BigInt& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= k;
  return *this;
}

std::string WedgeExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, k] : terms_) {
    if (!first) out << (k < 0 ? " - " : " + ");
    else if (k < 0) out << "-";
    first = false;
    const BigInt mag = k < 0 ? BigInt(-k) : k;
    if (mag != 1) out << mag << "*";
    out << "(" << key.first << " ^ " << key.second << ")";
  }
  return out.str();
}

WedgeExpr wedge(const SymbolVector& a, const SymbolVector& b) {
  WedgeExpr out;
  for (const auto& [s, ka] : a.terms()) {
    for (const auto& [t, kb] : b.terms()) out.add(s, t, ka * kb);
  }
  return out;
}

WedgeExpr combine(const std::vector<std::pair<BigInt, WedgeExpr>>& terms) {
  WedgeExpr out;
  for (const auto& [k, w] : terms) out += k * w;
  return out;
}

}  // namespace ebloch
