#include <catch_amalgamated.hpp>

#include "trcycles/cycles.hpp"

using namespace trc;

namespace {
CurveData airy() {
  LocalCurve c;
  c.points.push_back({1, 2, {{3, Scalar(1)}}});
  return validate_local_curve(c);
}
CurveData two_point() {
  LocalCurve c;
  c.points.push_back({1, 2, {{3, Scalar(2)}, {5, Scalar(1, 3)}}});
  c.points.push_back({-1, 2, {{3, Scalar(2)}}});
  return validate_local_curve(c);
}
LocalForm form_at(int a, int e, Scalar v) {
  LocalForm f;
  f.series_mut(a).set(e, v);
  return f;
}
}  // namespace

TEST_CASE("pairing with local cycles") {
  CHECK(pair_cycle_form(LocalCycle::gamma(1, 3), form_at(1, 2, 1)) == Scalar(1));
  CHECK(pair_cycle_form(LocalCycle::gamma(1, 1), form_at(1, 1, 1)).is_zero());
  CHECK(pair_cycle_form(LocalCycle::b_cycle({1, 3}), form_at(1, -4, 1)) == Scalar(1, 3));
}

TEST_CASE("bhat on a purely local curve") {
  auto c = airy();
  LocalForm b = bhat(LocalCycle::gamma(1, 2), c);
  CHECK(b.series(1).coefficient(-3) == Scalar(2));
  CHECK(b.series(1).terms().size() == 1);
  CHECK(bhat(LocalCycle::gamma(1, -3), c).series(1).is_zero());
}

TEST_CASE("bhat on a localized global curve has analytic parts elsewhere") {
  GlobalCurve g;
  g.x.num = {0, -1, 0, Rational(1, 3)};
  g.y.num = {0, 1};
  g.points.push_back({1, Rational(1), 2});
  g.points.push_back({-1, Rational(-1), 2});
  CurveData c = localize_global_curve(g, 8);
  LocalForm b = bhat(LocalCycle::gamma(1, 1), c);
  CHECK(!b.series(-1).is_zero());
  CHECK(b.series(-1).coefficient(0) == Scalar(1, 4));
  // B-cycles stay dual to Bhat of the polar basis even with analytic parts
  for (int k = 1; k <= 5; ++k)
    for (int j = 1; j <= 5; ++j)
      CHECK(pair_cycle_form(LocalCycle::b_cycle({1, k}), bhat(LocalCycle::gamma(1, j), c)) ==
            Scalar(k == j ? 1 : 0));
}

TEST_CASE("chat is a right inverse on polar forms") {
  auto c = two_point();
  CHECK(chatB_polar(form_at(1, -3, 2), c) == LocalCycle::gamma(1, 2));
  CHECK(chatB_polar(form_at(-1, -4, 6), c) == LocalCycle::gamma(-1, 3, 2));
  LocalForm w = form_at(1, -6, Scalar(5, 7));
  w.series_mut(-1).set(-2, Scalar(-3));
  CHECK(bhat(chatB_polar(w, c), c).equal_on_common_window(w));
  try {
    chatB_polar(form_at(1, 2, 1), c);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInRange);
  }
}

TEST_CASE("projection and intersection") {
  auto c = two_point();
  LocalCycle g = LocalCycle::gamma(1, 2) + LocalCycle::gamma(1, -2, 3) + LocalCycle::gamma(-1, 5, Scalar(1, 2));
  LocalCycle p = projection(g, c);
  CHECK(p == LocalCycle::gamma(1, 2) + LocalCycle::gamma(-1, 5, Scalar(1, 2)));
  CHECK(projection(p, c) == p);
  CHECK(intersection(LocalCycle::gamma(1, 1), LocalCycle::gamma(1, 2), c).multiplier.is_zero());
  CHECK(intersection(LocalCycle::gamma(1, 2), LocalCycle::gamma(1, -2), c).multiplier == Scalar(-2));
  CHECK(intersection(LocalCycle::gamma(1, -2), LocalCycle::gamma(1, 2), c).multiplier == Scalar(2));
  CHECK(intersection(LocalCycle::gamma(1, 3), LocalCycle::gamma(-1, -3), c).multiplier.is_zero());
}

TEST_CASE("tautological pairing") {
  auto c = airy();
  CHECK(eta_pairing(form_at(1, -4, Scalar(1, 8)), c) == Scalar(-1, 24));
  CHECK(eta_pairing(form_at(1, 3, 1), c).is_zero());
  try {
    eta_pairing(form_at(1, -1, 1), c);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IllDefinedPairing);
  }
}
