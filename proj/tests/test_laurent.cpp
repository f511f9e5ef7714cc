#include <catch_amalgamated.hpp>

#include "trcycles/laurent.hpp"

using namespace trc;

TEST_CASE("product and inverse") {
  LaurentSeries f(SeriesKind::Function);
  f.set(2, Scalar(2));
  f.set(4, Scalar(1));
  LaurentSeries inv = f.inverse(10);
  LaurentSeries one = f * inv;
  CHECK(one.coefficient(0) == Scalar(1));
  for (int e = 1; e <= 10; ++e) CHECK(one.coefficient(e).is_zero());
  CHECK_THROWS_AS(one.coefficient(20), Error);
}

TEST_CASE("primitive requires zero residue") {
  LaurentSeries w(SeriesKind::Form);
  w.set(-2, Scalar(1));
  CHECK(w.primitive().coefficient(-1) == Scalar(-1));
  w.set(-1, Scalar(3));
  CHECK(w.residue() == Scalar(3));
  try {
    (void)w.primitive();
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoPrimitive);
  }
}

TEST_CASE("rotation of forms includes the differential") {
  LaurentSeries w = LaurentSeries::monomial(0, Scalar(1), SeriesKind::Form);
  LaurentSeries r = w.rotate(3, 1);
  CHECK(r.coefficient(0) == Scalar::root_of_unity(3, 1));
  CHECK(w.rotate(3, 3) == w);
  CHECK_THROWS_AS(w.rotate(3, 1, 4), Error);
}

TEST_CASE("truncated windows propagate") {
  LaurentSeries a(SeriesKind::Function, kNegInf, 5);
  a.set(1, Scalar(1));
  LaurentSeries b = LaurentSeries::monomial(-1, Scalar(1));
  LaurentSeries c = a * b;
  CHECK(c.valid_max() == 4);
  CHECK(c.coefficient(0) == Scalar(1));
}
