#include <catch_amalgamated.hpp>

#include "trcycles/airy.hpp"

using namespace trc;

namespace {
CurveData airy() {
  LocalCurve c;
  c.points.push_back({1, 2, {{3, Scalar(1)}}});
  return validate_local_curve(c);
}
CurveData two_point() {
  LocalCurve c;
  c.points.push_back({-1, 2, {{3, Scalar(2)}}});
  c.points.push_back({1, 2, {{3, Scalar(2)}, {5, Scalar(1, 3)}}});
  return validate_local_curve(c);
}
CurveData r3() {
  LocalCurve c;
  c.points.push_back({1, 3, {{4, Scalar(1)}}});
  return validate_local_curve(c);
}
Label L(int k) { return {1, k}; }
}  // namespace

TEST_CASE("tensor entries on Airy") {
  auto c = airy();
  OmegaTable t = compute_omega_table(c, 2);
  AiryTensors at = compute_airy_tensors(c, t);
  CHECK(at.c(L(5), L(1), L(1)) == Scalar(1, 5));
  CHECK(at.a(L(1), L(1), L(1)) == Scalar(2));
  CHECK(at.d(L(3)) == Scalar(1, 24));
  for (const auto& l : at.labels) CHECK(l.k % 2 == 1);
  for (const auto& [key, v] : at.C) CHECK(key[0].k % 2 == 1);
}

TEST_CASE("tensor recursion equals the direct engine") {
  for (const auto& c : {airy(), two_point()}) {
    OmegaTable t = compute_omega_table(c, 4);
    OmegaTable tr = tensor_recursion(compute_airy_tensors(c, t), 4);
    CHECK(tr.levels == t.levels);
  }
}

TEST_CASE("tensor form rejects higher order points") {
  auto c = r3();
  OmegaTable t = compute_omega_table(c, 1);
  CHECK_THROWS_AS(compute_airy_tensors(c, t), Error);
}

TEST_CASE("U_k partition counts") {
  CHECK(compute_Uk(1).shapes.empty());
  CHECK(compute_Uk(2).shapes == std::map<std::vector<int>, long>{{{2}, 1}});
  CHECK(compute_Uk(3).shapes == std::map<std::vector<int>, long>{{{3}, 1}});
  CHECK(compute_Uk(4).shapes == std::map<std::vector<int>, long>{{{4}, 1}, {{2, 2}, 3}});
  CHECK(compute_Uk(5).shapes == std::map<std::vector<int>, long>{{{5}, 1}, {{3, 2}, 10}});
  CHECK(compute_Uk(6).shapes.at({2, 2, 2}) == 15);
}

TEST_CASE("quadratic PDE on Airy and the two-point curve") {
  for (const auto& c : {airy(), two_point()}) {
    OmegaTable t = compute_omega_table(c, 4);
    AiryTensors at = compute_airy_tensors(c, t);
    auto rep = verify_quadratic_pde(c, at, t, 4, 4);
    CHECK(rep.zero());
    CHECK(rep.checked > 0);
    CHECK_FALSE(verify_quadratic_pde(c, at, t, 4, 4, PdeReading::AlternateLiteral).zero());
    CHECK_FALSE(verify_quadratic_pde(c, at, t, 4, 4, PdeReading::AlternateSymmetric).zero());
  }
}

TEST_CASE("perturbing D[(1,3)] shows up at hbar order 1") {
  auto c = airy();
  OmegaTable t = compute_omega_table(c, 4);
  AiryTensors at = compute_airy_tensors(c, t);
  perturb_tensor(at, "D", {L(3)}, Scalar(1));
  auto rep = verify_quadratic_pde(c, at, t, 4, 4);
  REQUIRE_FALSE(rep.zero());
  CHECK(rep.nonzero.front().order == 1);
}
