#pragma once

// Invariant suite run by `trcycles verify`: symmetry, homogeneity, dilaton, engine
// equivalence, quadratic and higher-order PDEs, insertion operator.

#include <string>
#include <vector>

#include "trcycles/airy.hpp"
#include "trcycles/higher_pde.hpp"
#include "trcycles/io.hpp"
#include "trcycles/wavefunction.hpp"

namespace trc {

struct CheckResult {
  enum class Status { Pass, Fail, Skipped };
  std::string name;
  Status status = Status::Pass;
  std::string detail;
  std::vector<std::string> offending;

  bool passed() const { return status != Status::Fail; }
  void flag(std::string what) {
    status = Status::Fail;
    if (offending.size() < 20) offending.push_back(std::move(what));
  }
};

inline const char* to_string(CheckResult::Status s) {
  switch (s) {
    case CheckResult::Status::Pass: return "pass";
    case CheckResult::Status::Fail: return "fail";
    case CheckResult::Status::Skipped: return "skipped";
  }
  return "unknown";
}

namespace detail {

inline std::string describe_entry(int g, int n, const IndexTuple& idx) {
  std::string s = "F_{" + std::to_string(g) + "," + std::to_string(n) + "}[";
  for (const auto& l : idx) s += l.to_string();
  return s + "]";
}

inline std::string describe_residual(const ResidualEntry& e) {
  std::string s = "i=" + e.i.to_string() + " hbar^" + std::to_string(e.order) + " t'^[";
  for (const auto& l : e.monomial) s += l.to_string();
  return s + "] = " + e.value.to_string();
}

inline CheckResult residual_check(std::string name, const ResidualReport& rep) {
  CheckResult out{std::move(name), CheckResult::Status::Pass, std::to_string(rep.checked) + " coefficients", {}};
  for (const auto& e : rep.nonzero) out.flag(describe_residual(e));
  if (!rep.zero()) out.detail += ", " + std::to_string(rep.nonzero.size()) + " nonzero";
  return out;
}

inline CheckResult skipped(std::string name, std::string why) {
  return {std::move(name), CheckResult::Status::Skipped, std::move(why), {}};
}

}  // namespace detail

/// The engine computes every entry once per choice of distinguished variable and
/// fails on disagreement, so a finished table is symmetric; this records that and,
/// for curves over Q, that no cyclotomic part survives.
inline CheckResult check_symmetry(const CurveData& c, const OmegaTable& t) {
  CheckResult out{"symmetry", CheckResult::Status::Pass, "", {}};
  long n = 0;
  for (const auto& [gn, level] : t.levels)
    for (const auto& [idx, v] : level) {
      ++n;
      if (c.field_order() == 1 && !v.is_rational())
        out.flag(detail::describe_entry(gn.first, gn.second, idx) + " = " + v.to_string() + " is not rational");
    }
  long compared = 0;
  for (const auto& [gn, m] : t.symmetry_comparisons) compared += m;
  out.detail = std::to_string(n) + " entries, " + std::to_string(compared) + " recomputed with another distinguished variable";
  if (c.field_order() == 1) out.detail += ", all rational";
  return out;
}

/// F_{g,n}(lambda S) = lambda^{2-2g-n} F_{g,n}(S) entrywise.
inline CheckResult check_homogeneity(const CurveData& c, const OmegaTable& t, const std::vector<Scalar>& lambdas) {
  CheckResult out{"homogeneity", CheckResult::Status::Pass, "", {}};
  long n = 0;
  for (const auto& lambda : lambdas) {
    const OmegaTable s = compute_omega_table(scale_curve(c, lambda), t.chi_max);
    const Scalar inv = Scalar(1) / lambda;
    for (const auto& [gn, level] : t.levels) {
      const int e = 2 - 2 * gn.first - gn.second;
      Scalar factor(1);
      for (int i = 0; i < -e; ++i) factor *= inv;
      for (int i = 0; i < e; ++i) factor *= lambda;
      auto compare = [&](const IndexTuple& idx) {
        ++n;
        const Scalar want = factor * t.get(gn.first, gn.second, idx);
        const Scalar got = s.get(gn.first, gn.second, idx);
        if (!(got == want))
          out.flag("lambda=" + lambda.to_string() + " " + detail::describe_entry(gn.first, gn.second, idx) + ": " +
                   got.to_string() + " vs " + want.to_string());
      };
      for (const auto& [idx, v] : level) compare(idx);
      for (const auto& [idx, v] : s.level(gn.first, gn.second))
        if (!level.count(idx)) compare(idx);
    }
  }
  out.detail = std::to_string(lambdas.size()) + " scalings, " + std::to_string(n) + " entries";
  return out;
}

/// <eta, omega_{g,n+1}(., J)> = (2-2g-n) F_{g,n}[J] for stable (g,n), 2g-2+n <= chi_max.
inline CheckResult check_dilaton(const CurveData& c, const OmegaTable& t, int chi_max) {
  CheckResult out{"dilaton", CheckResult::Status::Pass, "", {}};
  long n_checked = 0;
  for (int chi = 1; chi <= chi_max; ++chi)
    for (int g = 0; 2 * g - 1 <= chi; ++g) {
      const int n = chi + 2 - 2 * g;
      if (n < 1 || !t.has_level(g, n) || !t.has_level(g, n + 1)) continue;
      std::map<int, int> kb = t.bounds.at({g, n});
      for (const auto& [a, k] : t.bounds.at({g, n + 1})) kb[a] = std::max(kb[a], k);
      detail::for_each_multiset(detail::label_range(c, kb), n, [&](const IndexTuple& j) {
        ++n_checked;
        const Scalar lhs = eta_pairing(t.omega_form(c, g, n + 1, j), c);
        const Scalar rhs = Scalar(2 - 2 * g - n) * t.get(g, n, j);
        if (!(lhs == rhs))
          out.flag(detail::describe_entry(g, n, j) + ": " + lhs.to_string() + " vs " + rhs.to_string());
      });
    }
  out.detail = std::to_string(n_checked) + " entries";
  return out;
}

/// Direct residue engine against the ABCD tensor recursion (order-2 curves).
inline CheckResult check_engine_equivalence(const CurveData& c, const OmegaTable& t, const AiryTensors& at) {
  const std::string name = "engine-equivalence";
  if (c.max_order() != 2) return detail::skipped(name, "tensor recursion needs order-2 points");
  CheckResult out{name, CheckResult::Status::Pass, "chi <= " + std::to_string(t.chi_max), {}};
  OmegaTable rec;
  try {
    rec = tensor_recursion(at, t.chi_max);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SymmetryViolation) throw;
    out.flag(e.what());
    return out;
  }
  for (const auto& [gn, level] : t.levels) {
    if (!rec.has_level(gn.first, gn.second)) {
      out.flag(detail::describe_entry(gn.first, gn.second, {}) + " missing from tensor recursion");
      continue;
    }
    const auto& other = rec.level(gn.first, gn.second);
    for (const auto& [idx, v] : level)
      if (!(rec.get(gn.first, gn.second, idx) == v)) out.flag(detail::describe_entry(gn.first, gn.second, idx));
    for (const auto& [idx, v] : other)
      if (!level.count(idx)) out.flag(detail::describe_entry(gn.first, gn.second, idx) + " only in tensor recursion");
  }
  return out;
}

inline CheckResult check_quadratic_pde(const CurveData& c, const AiryTensors& at, const OmegaTable& t, int hbar_max,
                                       int deg_max) {
  return detail::residual_check("quadratic-pde", verify_quadratic_pde(c, at, t, hbar_max, deg_max));
}

/// General order-r operator; on order-3 curves also the explicit r = 3 form and its
/// evaluated term-by-term agreement.
inline std::vector<CheckResult> check_higher_pde(const CurveData& c, const OmegaTable& t, int hbar_max) {
  const HigherPdeReport rep = verify_higher_pde(c, t, hbar_max);
  std::vector<CheckResult> out{detail::residual_check("higher-pde", rep.general)};
  if (c.max_order() == 3) {
    out.push_back(detail::residual_check("higher-pde-explicit-r3", rep.explicit_form));
    CheckResult terms{"higher-pde-terms", CheckResult::Status::Pass, "", {}};
    std::string symbolic;
    for (const auto& tc : rep.terms) {
      if (!tc.evaluates_equal)
        terms.flag(tc.term.name() + ": " + tc.first.get_str() + " vs " + tc.second.get_str());
      if (tc.first != tc.second)
        symbolic += (symbolic.empty() ? "" : ", ") + tc.term.name() + " " + tc.first.get_str() + " vs " +
                    tc.second.get_str();
    }
    terms.detail = std::to_string(rep.terms.size()) + " terms agree after evaluation";
    if (!symbolic.empty()) terms.detail += "; symbolic coefficients differ: " + symbolic;
    out.push_back(std::move(terms));
  }
  return out;
}

/// Insertion operator for omega_{0,3}, omega_{0,4}, omega_{1,2}.
inline CheckResult check_hirota(const CurveData& c, const OmegaTable& t) {
  CheckResult out{"insertion-operator", CheckResult::Status::Pass, "", {}};
  int checked = 0;
  for (auto [g, n] : {std::pair{0, 2}, {0, 3}, {1, 1}}) {
    if (!t.has_level(g, n + 1)) continue;
    const HirotaReport rep = hirota_insertion_check(t, c, g, n);
    checked += rep.checked;
    for (const auto& m : rep.mismatches) out.flag("(" + std::to_string(g) + "," + std::to_string(n) + ") " + m);
  }
  out.detail = std::to_string(checked) + " spectator tuples";
  return out;
}

inline Json report_to_json(const std::vector<CheckResult>& checks, const std::string& hash) {
  Json j;
  j["version"] = kFormatVersion;
  j["curve_hash"] = hash;
  Json arr = Json::array();
  bool ok = true;
  for (const auto& ch : checks) {
    ok = ok && ch.passed();
    arr.push_back({{"name", ch.name}, {"status", to_string(ch.status)}, {"detail", ch.detail}, {"offending", ch.offending}});
  }
  j["status"] = ok ? "pass" : "fail";
  j["checks"] = arr;
  return j;
}

}  // namespace trc
