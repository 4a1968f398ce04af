#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcluster/error.hpp"
#include "qcluster/qcoeff.hpp"
#include "support.hpp"

using namespace qcluster;

namespace {

QCoeff Q(const char* s) { return parse_qcoeff(s); }
HalfInt half(long long twice) { return HalfInt::from_twice(twice); }

}  // namespace

TEST_CASE("qpow") {
  CHECK(qpow(HalfInt{}) == QCoeff(1));
  CHECK(qpow(half(1)) * qpow(half(-1)) == QCoeff(1));
  CHECK(to_string(qpow(half(-3))) == "q^{-3/2}");
}

TEST_CASE("ring operations") {
  CHECK((qpow(half(1)) + (-qpow(half(1)))).is_zero());
  CHECK(Q("q - q^-1") * Q("q + q^{-1}") == Q("q^2 - q^{-2}"));
  CHECK(qpow(HalfInt::integer(-1)) * qpow(HalfInt::integer(2)) == Q("q"));
  CHECK(Q("3*q^{1/2} - q^{-2}").size() == 2);
}

TEST_CASE("bar") {
  CHECK(bar(qpow(half(1))) == qpow(half(-1)));
  CHECK(bar(QCoeff(1)) == QCoeff(1));
  CHECK(bar(Q("q + q^-1")) == Q("q + q^-1"));
}

TEST_CASE("divide_exact") {
  CHECK(divide_exact(Q("q^2 - q^-2"), Q("q - q^-1")) == Q("q + q^-1"));
  CHECK(divide_exact(Q("2*q^{3/2} + 7"), Q("2*q^{3/2} + 7")) == QCoeff(1));
  CHECK_THROWS_AS(divide_exact(Q("q"), Q("q - 1")), Error);
  try {
    divide_exact(Q("q"), Q("q - 1"));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDivisible);
  }
  try {
    divide_exact(Q("q"), QCoeff());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
  // half-integer exponents shift cleanly
  CHECK(divide_exact(Q("q^{1/2} - q^{-3/2}"), Q("q^{1/2}")) == Q("1 - q^-2"));
}

TEST_CASE("text round trip") {
  for (const char* s : {"3*q^{1/2} - q^{-2}", "0", "1", "-q", "1/2*q^{3} + 5/7", "q^{-1/2}"}) {
    QCoeff c = Q(s);
    CHECK(Q(to_string(c).c_str()) == c);
  }
  CHECK(to_string(Q("q^{1/2}*3 - q^(-2)")) == "3*q^{1/2} - q^{-2}");
  CHECK(Q("1/q") == qpow(HalfInt::integer(-1)));
  CHECK(Q("(q - q^-1)(q + q^-1)") == Q("q^2 - q^-2"));
  CHECK_THROWS_AS(Q("D(1,2)"), Error);
  CHECK_THROWS_AS(Q("q^{1/3}"), Error);
}

TEST_CASE("property: ring axioms and bar involution") {
  qtest::Gen g(1);
  for (int it = 0; it < 300; ++it) {
    QCoeff a = g.qcoeff(), b = g.qcoeff(), c = g.qcoeff();
    CHECK(bar(bar(a)) == a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) - b == a);
    CHECK(bar(a * b) == bar(a) * bar(b));
  }
}

TEST_CASE("property: exact division inverts multiplication") {
  qtest::Gen g(2);
  for (int it = 0; it < 300; ++it) {
    QCoeff a = g.qcoeff(4, 8), b = g.nonzero_qcoeff(3, 5);
    CHECK(divide_exact(a * b, b) == a);
  }
}

TEST_CASE("property: a non-multiple is rejected") {
  qtest::Gen g(3);
  int rejected = 0;
  for (int it = 0; it < 200; ++it) {
    QCoeff a = g.nonzero_qcoeff(3, 5), b = g.nonzero_qcoeff(3, 5);
    if (b.is_monomial()) continue;
    QCoeff num = a * b + QCoeff::qpow(HalfInt::from_twice(a.max_exponent().twice + b.max_exponent().twice + 3));
    // num ≡ q^{big} (mod b) and b is not a unit, so the division must fail.
    try {
      divide_exact(num, b);
      FAIL("expected NotDivisible");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotDivisible);
      ++rejected;
    }
  }
  CHECK(rejected > 0);
}
