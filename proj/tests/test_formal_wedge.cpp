#include <doctest.h>

#include <random>

#include "ebloch/formal_wedge.hpp"

using namespace ebloch;

namespace {

SymbolVector sym(const std::string& s, int k = 1) { return SymbolVector::symbol(s, k); }

SymbolVector random_vector(std::mt19937_64& gen) {
  static const char* names[] = {"a", "b", "c", "d", "pi_i"};
  std::uniform_int_distribution<int> coef(-9, 9);
  SymbolVector v;
  for (const char* n : names) v.add(n, coef(gen));
  return v;
}

}  // namespace

TEST_CASE("SymbolVector keeps only nonzero entries") {
  SymbolVector v{{"x", 2}, {"y", 0}};
  CHECK(v.terms().size() == 1);
  v.add("x", -2);
  CHECK(v.is_zero());
  CHECK((sym("a") - sym("a")).is_zero());
  CHECK((3 * sym("a")).coefficient("a") == 3);
  CHECK((-sym("a")).coefficient("a") == -1);
  CHECK(sym("a").coefficient("zzz") == 0);
}

TEST_CASE("wedge basics") {
  CHECK(wedge(sym("x"), sym("x")).is_zero());
  CHECK(wedge(sym("a") + sym("b"), sym("b")) == wedge(sym("a"), sym("b")));
  // canonical key order
  const WedgeExpr ba = wedge(sym("b"), sym("a"));
  CHECK(ba.terms().size() == 1);
  CHECK(ba.coefficient("a", "b") == -1);
  CHECK(ba.coefficient("b", "a") == 1);

  // (log x + 2 pi i) ^ (-log(1-x) + pi i)
  const SymbolVector lhs = sym("log_x") + 2 * sym("pi_i");
  const SymbolVector rhs = -sym("log_1mx") + sym("pi_i");
  WedgeExpr expect;
  expect.add("log_x", "log_1mx", -1);
  expect.add("log_x", "pi_i", 1);
  expect.add("log_1mx", "pi_i", 2);
  CHECK(wedge(lhs, rhs) == expect);
}

TEST_CASE("combine and is_zero") {
  const WedgeExpr w = wedge(sym("a"), sym("b"));
  CHECK(is_zero(combine({{1, w}, {-1, w}})));
  CHECK(combine({{2, w}, {3, w}}).coefficient("a", "b") == 5);
  CHECK(is_zero(WedgeExpr{}));
  CHECK_FALSE(is_zero(w));
  const SymbolVector v = sym("p", 4) - sym("q", 7);
  CHECK(is_zero(wedge(v, v)));
}

TEST_CASE("wedge is bilinear and alternating on random vectors") {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<int> k(-20, 20);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_vector(gen), b = random_vector(gen), c = random_vector(gen);
    const int m = k(gen), n = k(gen);
    REQUIRE(wedge(m * a + n * b, c) == combine({{m, wedge(a, c)}, {n, wedge(b, c)}}));
    REQUIRE(is_zero(wedge(a, b) + wedge(b, a)));
  }
}

TEST_CASE("coefficients do not overflow") {
  const BigInt big = BigInt(1) << 80;
  const WedgeExpr w = wedge(SymbolVector::symbol("a", big), SymbolVector::symbol("b", big));
  CHECK(w.coefficient("a", "b") == (BigInt(1) << 160));
}
