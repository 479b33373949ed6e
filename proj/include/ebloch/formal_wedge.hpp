#pragma once

// Exact antisymmetric bilinear expressions over a finite set of named
// symbols. Used to check identities in C wedge_Z C once every logarithm has
// been written as an integer combination of a fixed symbol basis.

#include <boost/multiprecision/cpp_int.hpp>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ebloch {

using BigInt = boost::multiprecision::cpp_int;

/// Integer combination of named symbols ("log_x", "pi_i", ...). Zero
/// coefficients are never stored.
class SymbolVector {
 public:
  SymbolVector() = default;
  SymbolVector(std::initializer_list<std::pair<const std::string, BigInt>> terms);

  static SymbolVector symbol(const std::string& name, const BigInt& coefficient = 1);

  void add(const std::string& name, const BigInt& coefficient);
  BigInt coefficient(const std::string& name) const;
  const std::map<std::string, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  SymbolVector& operator+=(const SymbolVector& rhs);
  SymbolVector& operator-=(const SymbolVector& rhs);
  SymbolVector& operator*=(const BigInt& k);
  friend SymbolVector operator+(SymbolVector a, const SymbolVector& b) { return a += b; }
  friend SymbolVector operator-(SymbolVector a, const SymbolVector& b) { return a -= b; }
  friend SymbolVector operator*(const BigInt& k, SymbolVector a) { return a *= k; }
  friend SymbolVector operator-(SymbolVector a) { return a *= -1; }
  friend bool operator==(const SymbolVector&, const SymbolVector&) = default;

  std::string to_string() const;

 private:
  std::map<std::string, BigInt> terms_;
};

/// Element of the exterior square: keys are ordered pairs (s, t) with s < t.
class WedgeExpr {
 public:
  using Key = std::pair<std::string, std::string>;

  WedgeExpr() = default;

  /// Adds k * (s ^ t), canonicalizing order and dropping s ^ s.
  void add(const std::string& s, const std::string& t, const BigInt& k);
  BigInt coefficient(const std::string& s, const std::string& t) const;
  const std::map<Key, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  WedgeExpr& operator+=(const WedgeExpr& rhs);
  WedgeExpr& operator-=(const WedgeExpr& rhs);
  WedgeExpr& operator*=(const BigInt& k);
  friend WedgeExpr operator+(WedgeExpr a, const WedgeExpr& b) { return a += b; }
  friend WedgeExpr operator-(WedgeExpr a, const WedgeExpr& b) { return a -= b; }
  friend WedgeExpr operator*(const BigInt& k, WedgeExpr a) { return a *= k; }
  friend bool operator==(const WedgeExpr&, const WedgeExpr&) = default;

  std::string to_string() const;

 private:
  std::map<Key, BigInt> terms_;
};

WedgeExpr wedge(const SymbolVector& a, const SymbolVector& b);
WedgeExpr combine(const std::vector<std::pair<BigInt, WedgeExpr>>& terms);
inline bool is_zero(const WedgeExpr& w) { return w.is_zero(); }

}  // namespace ebloch
