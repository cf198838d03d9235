#include <cmath>

#include "doctest.h"
#include "toricmmp/error.hpp"
#include "toricmmp/scalar.hpp"

using namespace toricmmp;

TEST_CASE("scalar parse and print round trip") {
  for (const char* s : {"3/2", "-7", "0", "1/2+1/2*sqrt(2)", "-sqrt(2)", "3-2*sqrt(5)", "sqrt(3)"}) {
    Scalar x = Scalar::parse(s);
    CHECK(Scalar::parse(x.to_string()) == x);
  }
  CHECK(Scalar::parse("1/2+1/2*sqrt(2)").to_string() == "1/2+1/2*sqrt(2)");
}

TEST_CASE("scalar floor of a quadratic value") {
  Scalar x = Scalar::parse("1/2+1/2*sqrt(2)");
  CHECK(x.floor() == 1);
  CHECK(x.ceil() == 2);
  CHECK(Scalar::parse("-sqrt(2)").floor() == -2);
  CHECK(Rational(3, 2) == Scalar(Rational(3, 2)).rational_part());
  CHECK(Scalar(Rational(-1, 2)).floor() == -1);
}

TEST_CASE("scalar exact sign with cancellation") {
  // 140/99 < sqrt(2) < 99/70.
  Scalar r2 = Scalar::sqrt_of(2);
  CHECK(r2 < Scalar(Rational(99, 70)));
  CHECK(r2 > Scalar(Rational(140, 99)));
  CHECK((r2 * r2) == Scalar(2));
  CHECK((Scalar(1) / (r2 - Scalar(1))) == r2 + Scalar(1));
}

TEST_CASE("scalar rejects mixed roots") {
  CHECK_THROWS_AS(Scalar::sqrt_of(2) + Scalar::sqrt_of(3), Error);
  CHECK_THROWS_AS(Scalar::parse("sqrt(4)"), Error);
}

TEST_CASE("scalar floor agrees with floating point on a sample") {
  for (int a = -20; a <= 20; ++a)
    for (int b = -7; b <= 7; ++b) {
      Scalar x(Rational(a, 3), Rational(b, 2), 2);
      double d = a / 3.0 + b / 2.0 * std::sqrt(2.0);
      CHECK(x.floor() == static_cast<long>(std::floor(d)));
    }
}

TEST_CASE("continued fraction of sqrt 2") {
  auto cf = continued_fraction(Scalar::sqrt_of(2), 6);
  REQUIRE(cf.size() == 6);
  CHECK(cf[0] == 1);
  for (int i = 1; i < 6; ++i) CHECK(cf[i] == 2);
  auto half = continued_fraction(Scalar(Rational(7, 3)), 10);
  CHECK(half.size() == 2);
}
