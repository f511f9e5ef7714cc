#include <catch_amalgamated.hpp>

#include "trcycles/io.hpp"

using namespace trc;

namespace {
const char* kTwoPoint = R"({
  "version": 1,
  "kind": "local",
  "points": [
    {"label": -1, "order": 2, "times": {"3": "2"}},
    {"label": 1, "order": 2, "times": {"3": "2", "5": "1/3"}}
  ],
  "phi": [[[1, 1], [-1, 1], "1/4"]]
})";

const char* kCubic = R"({
  "version": 1,
  "kind": "global",
  "x": {"num": ["0", "-1", "0", "1/3"], "den": ["1"]},
  "y": {"num": ["0", "1"]},
  "points": [{"label": 1, "at": "1", "order": 2}, {"label": -1, "at": "-1", "order": 2}],
  "n_max": 8
})";
}  // namespace

TEST_CASE("curve specs round-trip exactly") {
  for (const char* text : {kTwoPoint, kCubic}) {
    CurveSpec s = parse_curve_spec(text);
    const std::string once = dump(curve_spec_to_json(s));
    CHECK(parse_curve_spec(once) == s);
    CHECK(dump(curve_spec_to_json(parse_curve_spec(once))) == once);
  }
  CurveSpec s = parse_curve_spec(kTwoPoint);
  REQUIRE(s.local.phi.size() == 1);
  CHECK(s.local.phi.begin()->first.first == Label{-1, 1});
}

TEST_CASE("cubic localizes to t3 = 2 at z = 1") {
  CurveData c = build_curve(parse_curve_spec(kCubic));
  CHECK(c.point(1).time(3) == Scalar(2));
  CHECK(c.point(-1).time(3) == Scalar(-2));
  const std::string text = dump(curve_spec_to_json(local_spec(c)));
  CHECK(build_curve(parse_curve_spec(text)).same_curve(c));
}

TEST_CASE("result files round-trip exactly") {
  CurveData c = build_curve(parse_curve_spec(kTwoPoint));
  OmegaTable t = compute_omega_table(c, 3);
  t.curve_hash = curve_hash(c);
  const std::string once = dump(omega_table_to_json(t));
  OmegaTable back = omega_table_from_json(Json::parse(once));
  CHECK(back == t);
  CHECK(back.bounds == t.bounds);
  CHECK(dump(omega_table_to_json(back)) == once);

  AiryTensors at = compute_airy_tensors(c, t);
  const std::string ta = dump(airy_tensors_to_json(at, t.curve_hash));
  CHECK(airy_tensors_from_json(Json::parse(ta)) == at);
  CHECK(dump(airy_tensors_to_json(airy_tensors_from_json(Json::parse(ta)), t.curve_hash)) == ta);

  LogZ z = assemble_logZprime(t, c, 3, 5);
  const std::string tz = dump(logz_to_json(z));
  CHECK(logz_from_json(Json::parse(tz)) == z);
  CHECK(dump(logz_to_json(logz_from_json(Json::parse(tz)))) == tz);
}

TEST_CASE("malformed input is a parse error") {
  auto kind = [](const std::string& text) {
    try {
      parse_curve_spec(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  CHECK(kind("{") == ErrorKind::Parse);
  CHECK(kind(R"({"version": 1, "kind": "local"})") == ErrorKind::Parse);
  CHECK(kind(R"({"version": 1, "kind": "local", "points": [{"label": 1, "order": 2, "times": {"x": "1"}}]})") ==
        ErrorKind::Parse);
  CHECK(kind(R"({"version": 1, "kind": "local", "points": [{"label": 1, "order": 2, "times": {"3": "1/0"}}]})") ==
        ErrorKind::Parse);
}

TEST_CASE("curve hash depends on the curve only") {
  CurveData a = build_curve(parse_curve_spec(kTwoPoint));
  CurveData b = build_curve(parse_curve_spec(dump(curve_spec_to_json(parse_curve_spec(kTwoPoint)))));
  CHECK(curve_hash(a) == curve_hash(b));
  CHECK(curve_hash(a).size() == 16);
}
