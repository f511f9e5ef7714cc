#include <catch_amalgamated.hpp>

#include "trcycles/tr_engine.hpp"

using namespace trc;

namespace {
CurveData airy() {
  LocalCurve c;
  c.points.push_back({1, 2, {{3, Scalar(1)}}});
  return validate_local_curve(c);
}
CurveData r3() {
  LocalCurve c;
  c.points.push_back({1, 3, {{4, Scalar(1)}}});
  return validate_local_curve(c);
}
Label L(int k) { return {1, k}; }
}  // namespace

TEST_CASE("Airy golden values") {
  auto c = airy();
  OmegaTable t = compute_omega_table(c, 3);
  CHECK(t.get(0, 3, {L(1), L(1), L(1)}) == Scalar(1));
  CHECK(t.get(1, 1, {L(3)}) == Scalar(1, 24));
  CHECK(t.get(1, 2, {L(3), L(3)}) == Scalar(1, 24));
  CHECK(t.get(1, 2, {L(1), L(5)}) == Scalar(1, 8));
  CHECK(t.get(0, 4, {L(1), L(1), L(1), L(3)}) == Scalar(1));
  CHECK(t.get(2, 1, {L(9)}) == Scalar(35, 384));
  CHECK(t.level(2, 1).size() == 1);
  CHECK(compute_Fg(t, c, 2).is_zero());
  CHECK_THROWS_AS(compute_Fg(t, c, 1), Error);
}

TEST_CASE("kernel applied to the disc term gives omega_{1,1}") {
  auto c = airy();
  LaurentSeries w = LaurentSeries::monomial(-2, Scalar(-1, 4));
  LocalForm f = k2_apply(c, 1, w);
  CHECK(f.series(1).coefficient(-4) == Scalar(1, 8));
  CHECK(f.series(1).terms().size() == 1);
}

TEST_CASE("r = 3 curve: symmetric rational omega_{0,4}") {
  auto c = r3();
  OmegaTable t = compute_omega_table(c, 2);
  CHECK(!t.level(0, 3).empty());
  for (const auto& [idx, v] : t.level(0, 4)) CHECK(v.is_rational());
  CHECK(!t.level(0, 4).empty());
  // K_3 does not contribute to omega_{0,3}
  OmegaTable k2 = compute_omega_table(c, 1, {2});
  CHECK(k2.level(0, 3) == t.level(0, 3));
}

TEST_CASE("higher kernel is empty beyond the ramification order") {
  auto c = airy();
  LocalForm f = kk_apply(c, 3, 1, [](const std::vector<int>&) { return LaurentSeries::monomial(-2, Scalar(1)); });
  CHECK(f.series(1).is_zero());
}
