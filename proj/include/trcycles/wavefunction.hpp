#pragma once

// ln Z(t') and ln Z'(t') as hbar-series with polynomial dependence on the times
// t'_i dual to the B-cycles, and the Hirota insertion check.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "trcycles/cycles.hpp"
#include "trcycles/tr_engine.hpp"

namespace trc {

/// Monomial in the t'_i as a sorted multiset of labels.
using Monomial = std::vector<Label>;

class TimesPolynomial {
 public:
  std::map<Monomial, Scalar> terms;

  static TimesPolynomial constant(const Scalar& c) {
    TimesPolynomial p;
    if (!c.is_zero()) p.terms[{}] = c;
    return p;
  }
  static TimesPolynomial variable(const Label& i) {
    TimesPolynomial p;
    p.terms[{i}] = Scalar(1);
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  void add(Monomial m, const Scalar& c) {
    if (c.is_zero()) return;
    std::sort(m.begin(), m.end());
    auto [it, inserted] = terms.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  Scalar coefficient(Monomial m) const {
    std::sort(m.begin(), m.end());
    auto it = terms.find(m);
    return it == terms.end() ? Scalar() : it->second;
  }

  TimesPolynomial& operator+=(const TimesPolynomial& o) {
    for (const auto& [m, c] : o.terms) add(m, c);
    return *this;
  }
  TimesPolynomial& operator-=(const TimesPolynomial& o) {
    for (const auto& [m, c] : o.terms) add(m, -c);
    return *this;
  }
  friend TimesPolynomial operator+(TimesPolynomial a, const TimesPolynomial& b) { return a += b; }
  friend TimesPolynomial operator-(TimesPolynomial a, const TimesPolynomial& b) { return a -= b; }
  friend TimesPolynomial operator*(const Scalar& s, const TimesPolynomial& p) {
    TimesPolynomial out;
    if (s.is_zero()) return out;
    for (const auto& [m, c] : p.terms) out.terms.emplace(m, c * s);
    return out;
  }

  /// Product keeping only monomials of degree <= max_degree.
  static TimesPolynomial product(const TimesPolynomial& a, const TimesPolynomial& b, int max_degree) {
    TimesPolynomial out;
    for (const auto& [ma, ca] : a.terms)
      for (const auto& [mb, cb] : b.terms) {
        if (static_cast<int>(ma.size() + mb.size()) > max_degree) continue;
        Monomial m;
        std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
        out.add(std::move(m), ca * cb);
      }
    return out;
  }

  /// Partial derivative with respect to t'_i.
  TimesPolynomial derivative(const Label& i) const {
    TimesPolynomial out;
    for (const auto& [m, c] : terms) {
      auto lo = std::lower_bound(m.begin(), m.end(), i);
      auto hi = std::upper_bound(m.begin(), m.end(), i);
      if (lo == hi) continue;
      Monomial rest(m.begin(), lo);
      rest.insert(rest.end(), std::next(lo), m.end());
      out.add(std::move(rest), c * Scalar(static_cast<long>(hi - lo)));
    }
    return out;
  }

  TimesPolynomial truncated(int max_degree) const {
    TimesPolynomial out;
    for (const auto& [m, c] : terms)
      if (static_cast<int>(m.size()) <= max_degree) out.terms.emplace(m, c);
    return out;
  }

  friend bool operator==(const TimesPolynomial&, const TimesPolynomial&) = default;
};

/// Formal series sum_m hbar^m P_m.
struct HbarSeries {
  std::map<int, TimesPolynomial> coeffs;
  int order_max = 0;

  const TimesPolynomial& at(int m) const {
    static const TimesPolynomial zero;
    auto it = coeffs.find(m);
    return it == coeffs.end() ? zero : it->second;
  }
  friend bool operator==(const HbarSeries&, const HbarSeries&) = default;
};

struct LogZ {
  HbarSeries series;
  bool includes_01 = false;
  bool includes_02 = false;
  friend bool operator==(const LogZ&, const LogZ&) = default;
};

/// Coefficient of a monomial with multiplicities m_1, m_2, ... is F[indices] / prod m_i!.
inline Scalar multiset_weight(const Monomial& m) {
  Rational w = 1;
  std::size_t i = 0;
  while (i < m.size()) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    for (std::size_t f = 2; f <= j - i; ++f) w /= static_cast<long>(f);
    i = j;
  }
  return Scalar(w);
}

/// ln Z(t') = sum hbar^{2g-2+n} F_{g,n}(t') / n!, stable (g,n) only.
inline LogZ assemble_logZ(const OmegaTable& t, int chi_max) {
  LogZ out;
  out.series.order_max = chi_max;
  for (const auto& [gn, level] : t.levels) {
    const int chi = 2 * gn.first - 2 + gn.second;
    if (chi < 1 || chi > chi_max) continue;
    TimesPolynomial& p = out.series.coeffs[chi];
    for (const auto& [idx, v] : level) p.add(idx, v * multiset_weight(idx));
  }
  return out;
}

/// ln Z' adds hbar^{-1} <gamma', omega_{0,1}> and (1/2) <gamma' x gamma', omega_{0,2}>,
/// with gamma' = sum t'_i B_i, for all labels with mode <= max_mode.
inline LogZ assemble_logZprime(const OmegaTable& t, const CurveData& c, int chi_max, int max_mode) {
  LogZ out = assemble_logZ(t, chi_max);
  out.includes_01 = out.includes_02 = true;
  std::vector<Label> labels;
  for (const auto& p : c.points())
    for (int k = 1; k <= max_mode; ++k) labels.push_back({p.label, k});
  LocalForm y;
  for (const auto& p : c.points()) y.at.emplace(p.label, c.omega01(p.label));
  TimesPolynomial p01, p02;
  for (const auto& i : labels) p01.add({i}, pair_cycle_form(LocalCycle::b_cycle(i), y));
  for (const auto& i : labels)
    for (const auto& j : labels) {
      // inner pairing with the second variable interior: <B_j, B(u, .)> = delta u^{k_j - 1} du
      LocalForm inner;
      inner.series_mut(j.point).set(j.k - 1, Scalar(1));
      p02.add({i, j}, Scalar(Rational(1, 2)) * pair_cycle_form(LocalCycle::b_cycle(i), inner));
    }
  if (!p01.is_zero()) out.series.coeffs[-1] += p01;
  if (!p02.is_zero()) out.series.coeffs[0] += p02;
  return out;
}

struct HirotaReport {
  bool passed = true;
  int checked = 0;
  std::vector<std::string> mismatches;
};

/// Delta_z omega_{g,n} = omega_{g,n+1}(z, .): evaluates
/// dx(z) Res_{p -> z} omega_{g,n+1}(p, J) / (x(p) - x(z)) with p = z + e, z a formal
/// point near each ramification point (x = x(a) + zeta^r), for every spectator tuple J.
inline HirotaReport hirota_insertion_check(const OmegaTable& t, const CurveData& c, int g, int n,
                                           bool include_dx = true) {
  HirotaReport rep;
  const int np1 = n + 1;
  if (!t.has_level(g, np1)) fail(ErrorKind::NotInRange, "omega_{g,n+1} not computed");
  std::vector<Label> labels = detail::label_range(c, t.bounds.at({g, np1}));
  detail::for_each_multiset(labels, n, [&](const IndexTuple& j) {
    LocalForm w = t.omega_form(c, g, np1, j);
    for (const auto& p : c.points()) {
      const LaurentSeries f = w.series(p.label).with_kind(SeriesKind::Function);
      const int r = p.order;
      // p = z + e: x(p) - x(z) = e q(e) with q(0) = r z^{r-1}, and the residue at e = 0
      // of f(z + e) de / (e q(e)) is the e^0 coefficient of f(z + e) / q(e), i.e. f(z) / q(0).
      const LaurentSeries q0 = LaurentSeries::monomial(r - 1, Scalar(r));
      const LaurentSeries res = f * q0.inverse(kPosInf);
      LaurentSeries out = include_dx ? res * q0 : res;
      ++rep.checked;
      if (!out.equal_on_common_window(f)) {
        rep.passed = false;
        std::string s = "point " + std::to_string(p.label) + " J=[";
        for (const auto& l : j) s += l.to_string();
        rep.mismatches.push_back(s + "]");
      }
    }
  });
  return rep;
}

}  // namespace trc
