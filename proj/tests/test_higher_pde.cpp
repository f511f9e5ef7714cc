#include <catch_amalgamated.hpp>

#include "trcycles/higher_pde.hpp"

using namespace trc;

namespace {
CurveData airy() {
  LocalCurve c;
  c.points.push_back({1, 2, {{3, Scalar(1)}}});
  return validate_local_curve(c);
}
CurveData r3(bool with_phi = false) {
  LocalCurve c;
  c.points.push_back({1, 3, {{4, Scalar(1)}}});
  if (!with_phi) return validate_local_curve(c);
  c.phi[{{1, 1}, {1, 1}}] = Scalar(1);
  c.phi[{{1, 1}, {1, 2}}] = Scalar(1, 2);
  c.phi[{{1, 2}, {1, 1}}] = Scalar(1, 2);
  return validate_local_curve(c, kPosInf, 24);
}
}  // namespace

TEST_CASE("general operator expansion") {
  OperatorExpansion op = general_operator(3);
  CHECK(op.size() == 8);
  CHECK(op.at({3, {1}, {2}}) == 3);
  CHECK(op.at({3, {}, {3}}) == 1);
  CHECK(op.at({3, {2, 1}, {}}) == 3);
  CHECK(general_operator(2).size() == 3);
  OperatorExpansion explicit_r3 = explicit_r3_operator();
  CHECK(explicit_r3.size() == 7);
  CHECK_FALSE(explicit_r3.count({3, {}, {3}}));
}

TEST_CASE("order-3 operator annihilates Z' on the r=3 curve") {
  auto c = r3();
  OmegaTable t = compute_omega_table(c, 3);
  HigherPdeReport rep = verify_higher_pde(c, t, 3);
  CHECK(rep.general.zero());
  CHECK(rep.general.checked > 0);
  CHECK(rep.explicit_form.zero());
  for (const auto& tc : rep.terms) CHECK(tc.evaluates_equal);

  OperatorExpansion dropped = general_operator(3);
  dropped.erase({3, {1}, {2}});
  CHECK_FALSE(verify_operator(c, t, dropped, 3).zero());
}

TEST_CASE("on r=2 curves the higher operator is the quadratic one") {
  auto c = airy();
  OmegaTable t = compute_omega_table(c, 4);
  HigherPdeReport rep = verify_higher_pde(c, t, 4);
  CHECK(rep.general.zero());
  CHECK(rep.terms.empty());
  CHECK(verify_quadratic_pde(c, compute_airy_tensors(c, t), t, 4, 4).zero());
  OperatorExpansion dropped = general_operator(2);
  dropped.erase({2, {2}, {}});
  CHECK_FALSE(verify_operator(c, t, dropped, 4).zero());
}

TEST_CASE("explicit r=3 operator misses K3(omega_{0,3}) once phi is nonzero") {
  auto c = r3(true);
  OmegaTable t = compute_omega_table(c, 3);
  OperatorExpansion general = general_operator(3);
  CHECK(verify_operator(c, t, general, 3).zero());
  ResidualReport explicit_form = verify_operator(c, t, explicit_r3_operator(), 3);
  REQUIRE_FALSE(explicit_form.zero());
  for (const auto& e : explicit_form.nonzero) {
    CHECK(e.order == 3);
    CHECK(e.monomial.empty());
  }
}
