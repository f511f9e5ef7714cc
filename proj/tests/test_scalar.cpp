#include <catch_amalgamated.hpp>

#include "trcycles/scalar.hpp"

using trc::Rational;
using trc::Scalar;

TEST_CASE("rational arithmetic") {
  Scalar a(1, 3), b(1, 6);
  CHECK(a + b == Scalar(1, 2));
  CHECK((a * b).to_string() == "1/18");
  CHECK((a / b) == Scalar(2));
  CHECK(Scalar(-4, 6).to_string() == "-2/3");
}

TEST_CASE("roots of unity") {
  for (int n : {3, 4, 5, 6, 12}) {
    Scalar rho = Scalar::root_of_unity(n, 1);
    CHECK(rho.pow(n) == Scalar(1));
    Scalar sum;
    for (int j = 0; j < n; ++j) sum += Scalar::root_of_unity(n, j);
    CHECK(sum.is_zero());
  }
  Scalar i = Scalar::root_of_unity(4, 1);
  CHECK(i * i == Scalar(-1));
  CHECK((Scalar(1) + i).inverse() * (Scalar(1) + i) == Scalar(1));
}

TEST_CASE("mixed orders embed into a common field") {
  Scalar w = Scalar::root_of_unity(3, 1), i = Scalar::root_of_unity(4, 1);
  Scalar z = w * i;
  CHECK(z.pow(12) == Scalar(1));
  CHECK(!(z.pow(6) == Scalar(1)));
  CHECK(Scalar::root_of_unity(6, 2) == w);
  CHECK((w + Scalar(1, 2)).order() == 3);
}

TEST_CASE("parse and print round trip") {
  for (const char* s : {"0", "7", "-3/4", "cyc3(1,2)", "cyc4(0,-1/2)"}) {
    Scalar v = Scalar::parse(s);
    CHECK(Scalar::parse(v.to_string()) == v);
  }
  CHECK(Scalar::parse("cyc3(1,0)").is_rational());
  CHECK_THROWS_AS(Scalar::parse("1/0"), trc::Error);
  CHECK_THROWS_AS(Scalar::parse("abc"), trc::Error);
}
