#pragma once

// JSON documents for curve specs, correlator tables, ABCD tensors, ln Z and check
// reports. Scalars travel as strings ("-3/7", "cyc3(0,1)"); writers emit keys and
// entries in canonical order so that read-then-write is the identity on their output.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include "trcycles/airy.hpp"
#include "trcycles/curve.hpp"
#include "trcycles/tr_engine.hpp"
#include "trcycles/wavefunction.hpp"

namespace trc {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Parsed curve-spec document: either local data or a genus-zero global curve.
struct CurveSpec {
  enum class Kind { Local, Global };
  Kind kind = Kind::Local;
  LocalCurve local;
  std::optional<int> times_precision, phi_precision;
  GlobalCurve global;
  int n_max = 0;
  Uniformizer uniformizer = Uniformizer::Monic;
  friend bool operator==(const CurveSpec&, const CurveSpec&) = default;
};

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) { fail(ErrorKind::Parse, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) parse_fail(std::string(what) + " must be an integer");
  return j.get<int>();
}

inline Scalar as_scalar(const Json& j, const char* what) {
  if (!j.is_string()) parse_fail(std::string(what) + " must be a string-encoded number");
  return Scalar::parse(j.get<std::string>());
}

inline Rational as_rational(const Json& j, const char* what) {
  if (!j.is_string()) parse_fail(std::string(what) + " must be a string-encoded rational");
  return Scalar::parse_rational(j.get<std::string>());
}

inline Json label_json(const Label& l) { return Json::array({l.point, l.k}); }

inline Label as_label(const Json& j) {
  if (!j.is_array() || j.size() != 2) parse_fail("label must be [point, k]");
  return {as_int(j[0], "label point"), as_int(j[1], "label mode")};
}

inline Json labels_json(const IndexTuple& idx) {
  Json out = Json::array();
  for (const auto& l : idx) out.push_back(label_json(l));
  return out;
}

inline IndexTuple as_labels(const Json& j) {
  if (!j.is_array()) parse_fail("indices must be a list of labels");
  IndexTuple out;
  for (const auto& e : j) out.push_back(as_label(e));
  return out;
}

inline Json rational_list(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(q.get_str());
  return out;
}

inline std::vector<Rational> as_rational_list(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) parse_fail(std::string(what) + " must be a nonempty list");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(as_rational(e, what));
  return out;
}

inline void check_version(const Json& j) {
  if (as_int(field(j, "version"), "version") != kFormatVersion)
    parse_fail("unsupported format version");
}

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace detail

/// Canonical text of a JSON document (two-space indent, trailing newline).
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json curve_spec_to_json(const CurveSpec& s) {
  Json j;
  j["version"] = kFormatVersion;
  if (s.kind == CurveSpec::Kind::Local) {
    j["kind"] = "local";
    Json pts = Json::array();
    for (const auto& p : s.local.points) {
      Json times = Json::object();
      for (const auto& [k, t] : p.times) times[std::to_string(k)] = t.to_string();
      pts.push_back({{"label", p.label}, {"order", p.order}, {"times", times}});
    }
    j["points"] = pts;
    Json phi = Json::array();
    for (const auto& [key, v] : s.local.phi)
      phi.push_back(Json::array({detail::label_json(key.first), detail::label_json(key.second), v.to_string()}));
    j["phi"] = phi;
    if (s.times_precision) j["times_precision"] = *s.times_precision;
    if (s.phi_precision) j["phi_precision"] = *s.phi_precision;
  } else {
    j["kind"] = "global";
    auto rf = [](const RationalFunction& f) {
      return Json{{"num", detail::rational_list(f.num)}, {"den", detail::rational_list(f.den)}};
    };
    j["x"] = rf(s.global.x);
    j["y"] = rf(s.global.y);
    Json pts = Json::array();
    for (const auto& p : s.global.points)
      pts.push_back({{"label", p.label}, {"at", p.at.get_str()}, {"order", p.order}});
    j["points"] = pts;
    j["n_max"] = s.n_max;
    j["uniformizer"] = s.uniformizer == Uniformizer::Monic ? "monic" : "literal";
  }
  return j;
}

inline CurveSpec curve_spec_from_json(const Json& j) {
  detail::check_version(j);
  CurveSpec s;
  const Json& kind = detail::field(j, "kind");
  const Json& pts = detail::field(j, "points");
  if (!pts.is_array()) detail::parse_fail("points must be a list");
  if (kind == "local") {
    s.kind = CurveSpec::Kind::Local;
    for (const auto& p : pts) {
      RamificationPoint rp;
      rp.label = detail::as_int(detail::field(p, "label"), "label");
      rp.order = detail::as_int(detail::field(p, "order"), "order");
      const Json& times = detail::field(p, "times");
      if (!times.is_object()) detail::parse_fail("times must be an object {k: value}");
      for (const auto& [k, v] : times.items()) {
        int kk = 0;
        try {
          std::size_t used = 0;
          kk = std::stoi(k, &used);
          if (used != k.size()) throw std::invalid_argument(k);
        } catch (const std::exception&) {
          detail::parse_fail("time index '" + k + "' is not an integer");
        }
        rp.times[kk] = detail::as_scalar(v, "time");
      }
      s.local.points.push_back(std::move(rp));
    }
    if (j.contains("phi")) {
      const Json& phi = j.at("phi");
      if (!phi.is_array()) detail::parse_fail("phi must be a list");
      for (const auto& e : phi) {
        if (!e.is_array() || e.size() != 3) detail::parse_fail("phi entry must be [[a,k],[b,j],value]");
        Label x = detail::as_label(e[0]), y = detail::as_label(e[1]);
        if (y < x) std::swap(x, y);
        s.local.phi[{x, y}] = detail::as_scalar(e[2], "phi value");
      }
    }
    if (j.contains("times_precision")) s.times_precision = detail::as_int(j.at("times_precision"), "times_precision");
    if (j.contains("phi_precision")) s.phi_precision = detail::as_int(j.at("phi_precision"), "phi_precision");
  } else if (kind == "global") {
    s.kind = CurveSpec::Kind::Global;
    auto rf = [](const Json& f, const char* what) {
      RationalFunction out;
      out.num = detail::as_rational_list(detail::field(f, "num"), what);
      out.den = f.contains("den") ? detail::as_rational_list(f.at("den"), what) : std::vector<Rational>{Rational(1)};
      return out;
    };
    s.global.x = rf(detail::field(j, "x"), "x");
    s.global.y = rf(detail::field(j, "y"), "y");
    for (const auto& p : pts)
      s.global.points.push_back({detail::as_int(detail::field(p, "label"), "label"),
                                 detail::as_rational(detail::field(p, "at"), "at"),
                                 detail::as_int(detail::field(p, "order"), "order")});
    s.n_max = detail::as_int(detail::field(j, "n_max"), "n_max");
    if (j.contains("uniformizer")) {
      const Json& u = j.at("uniformizer");
      if (u == "monic")
        s.uniformizer = Uniformizer::Monic;
      else if (u == "literal")
        s.uniformizer = Uniformizer::Literal;
      else
        detail::parse_fail("uniformizer must be \"monic\" or \"literal\"");
    }
  } else {
    detail::parse_fail("kind must be \"local\" or \"global\"");
  }
  return s;
}

inline CurveSpec parse_curve_spec(const std::string& text) { return curve_spec_from_json(detail::parse_text(text)); }

/// Validated curve data; global curves are localized at their declared points.
inline CurveData build_curve(const CurveSpec& s) {
  if (s.kind == CurveSpec::Kind::Global) return localize_global_curve(s.global, s.n_max, s.uniformizer);
  return validate_local_curve(s.local, s.times_precision.value_or(kPosInf), s.phi_precision.value_or(kPosInf));
}

/// Local spec of already validated data (what localize produces).
inline CurveSpec local_spec(const CurveData& c) {
  CurveSpec s;
  s.local = c.curve();
  if (c.times_precision() != kPosInf) s.times_precision = c.times_precision();
  if (c.phi_precision() != kPosInf) s.phi_precision = c.phi_precision();
  return s;
}

/// FNV-1a of the canonical local spec text, as 16 hex digits.
inline std::string curve_hash(const CurveData& c) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : dump(curve_spec_to_json(local_spec(c)))) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline Json omega_table_to_json(const OmegaTable& t) {
  Json j;
  j["version"] = kFormatVersion;
  j["curve_hash"] = t.curve_hash;
  j["chi_max"] = t.chi_max;
  Json bounds = Json::array();
  for (const auto& [gn, kb] : t.bounds) {
    Json m = Json::object();
    for (const auto& [a, k] : kb) m[std::to_string(a)] = k;
    bounds.push_back({{"g", gn.first}, {"n", gn.second}, {"max_mode", m}});
  }
  j["bounds"] = bounds;
  Json entries = Json::array();
  for (const auto& [gn, level] : t.levels)
    for (const auto& [idx, v] : level)
      entries.push_back({{"g", gn.first}, {"n", gn.second}, {"indices", detail::labels_json(idx)}, {"value", v.to_string()}});
  j["entries"] = entries;
  return j;
}

inline OmegaTable omega_table_from_json(const Json& j) {
  detail::check_version(j);
  OmegaTable t;
  const Json& hash = detail::field(j, "curve_hash");
  if (!hash.is_string()) detail::parse_fail("curve_hash must be a string");
  t.curve_hash = hash.get<std::string>();
  t.chi_max = detail::as_int(detail::field(j, "chi_max"), "chi_max");
  for (const auto& b : detail::field(j, "bounds")) {
    const std::pair<int, int> gn{detail::as_int(detail::field(b, "g"), "g"), detail::as_int(detail::field(b, "n"), "n")};
    auto& kb = t.bounds[gn];
    t.levels[gn];
    for (const auto& [a, k] : detail::field(b, "max_mode").items()) kb[std::stoi(a)] = detail::as_int(k, "max_mode");
  }
  for (const auto& e : detail::field(j, "entries")) {
    const std::pair<int, int> gn{detail::as_int(detail::field(e, "g"), "g"), detail::as_int(detail::field(e, "n"), "n")};
    IndexTuple idx = detail::as_labels(detail::field(e, "indices"));
    if (static_cast<int>(idx.size()) != gn.second) detail::parse_fail("entry has the wrong number of indices");
    std::sort(idx.begin(), idx.end());
    t.levels[gn][idx] = detail::as_scalar(detail::field(e, "value"), "value");
  }
  return t;
}

inline Json airy_tensors_to_json(const AiryTensors& at, const std::string& hash) {
  Json j;
  j["version"] = kFormatVersion;
  j["curve_hash"] = hash;
  j["max_mode"] = at.max_mode;
  j["labels"] = detail::labels_json(at.labels);
  Json tensors = Json::array();
  for (const auto& [name, t] : {std::pair<const char*, const Tensor*>{"A", &at.A}, {"B", &at.B}, {"C", &at.C}, {"D", &at.D}}) {
    Json entries = Json::array();
    for (const auto& [idx, v] : *t) entries.push_back({{"indices", detail::labels_json(idx)}, {"value", v.to_string()}});
    tensors.push_back({{"name", name}, {"entries", entries}});
  }
  j["tensors"] = tensors;
  return j;
}

inline AiryTensors airy_tensors_from_json(const Json& j) {
  detail::check_version(j);
  AiryTensors at;
  at.max_mode = detail::as_int(detail::field(j, "max_mode"), "max_mode");
  at.labels = detail::as_labels(detail::field(j, "labels"));
  for (const auto& t : detail::field(j, "tensors")) {
    const Json& name = detail::field(t, "name");
    Tensor* dst = name == "A" ? &at.A : name == "B" ? &at.B : name == "C" ? &at.C : name == "D" ? &at.D : nullptr;
    if (!dst) detail::parse_fail("unknown tensor name");
    const std::size_t arity = dst == &at.D ? 1 : 3;
    for (const auto& e : detail::field(t, "entries")) {
      IndexTuple idx = detail::as_labels(detail::field(e, "indices"));
      if (idx.size() != arity) detail::parse_fail("tensor entry has the wrong number of indices");
      (*dst)[idx] = detail::as_scalar(detail::field(e, "value"), "value");
    }
  }
  return at;
}

inline Json logz_to_json(const LogZ& z) {
  Json j;
  j["version"] = kFormatVersion;
  j["order_max"] = z.series.order_max;
  j["includes_01"] = z.includes_01;
  j["includes_02"] = z.includes_02;
  Json orders = Json::array();
  for (const auto& [m, p] : z.series.coeffs) {
    Json terms = Json::array();
    for (const auto& [mono, v] : p.terms) {
      Json mj = Json::array();
      std::size_t i = 0;
      while (i < mono.size()) {
        std::size_t e = i;
        while (e < mono.size() && mono[e] == mono[i]) ++e;
        mj.push_back(Json::array({detail::label_json(mono[i]), static_cast<int>(e - i)}));
        i = e;
      }
      terms.push_back({{"monomial", mj}, {"value", v.to_string()}});
    }
    orders.push_back({{"order", m}, {"terms", terms}});
  }
  j["hbar_order"] = orders;
  return j;
}

inline LogZ logz_from_json(const Json& j) {
  detail::check_version(j);
  LogZ z;
  z.series.order_max = detail::as_int(detail::field(j, "order_max"), "order_max");
  z.includes_01 = detail::field(j, "includes_01").get<bool>();
  z.includes_02 = detail::field(j, "includes_02").get<bool>();
  for (const auto& o : detail::field(j, "hbar_order")) {
    TimesPolynomial& p = z.series.coeffs[detail::as_int(detail::field(o, "order"), "order")];
    for (const auto& t : detail::field(o, "terms")) {
      Monomial mono;
      for (const auto& f : detail::field(t, "monomial")) {
        if (!f.is_array() || f.size() != 2) detail::parse_fail("monomial factor must be [[a,k], multiplicity]");
        const Label l = detail::as_label(f[0]);
        for (int m = detail::as_int(f[1], "multiplicity"); m > 0; --m) mono.push_back(l);
      }
      p.add(mono, detail::as_scalar(detail::field(t, "value"), "value"));
    }
  }
  return z;
}

}  // namespace trc
