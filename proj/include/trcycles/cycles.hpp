#pragma once

// Local cycles Gamma_{a,k} as functionals on forms, the maps Bhat and Chat, the
// intersection pairing and the tautological pairing.

#include <map>
#include <string>

#include "trcycles/curve.hpp"
#include "trcycles/errors.hpp"
#include "trcycles/laurent.hpp"
#include "trcycles/scalar.hpp"

namespace trc {

/// A 1-form given by its local expansions at the ramification points. Points
/// without an entry carry the zero form (exactly).
struct LocalForm {
  std::map<int, LaurentSeries> at;

  const LaurentSeries& series(int label) const {
    static const LaurentSeries zero(SeriesKind::Form);
    auto it = at.find(label);
    return it == at.end() ? zero : it->second;
  }
  LaurentSeries& series_mut(int label) {
    return at.try_emplace(label, LaurentSeries(SeriesKind::Form)).first->second;
  }

  LocalForm& operator+=(const LocalForm& o) {
    for (const auto& [a, s] : o.at) series_mut(a) += s;
    return *this;
  }
  friend LocalForm operator*(const Scalar& c, LocalForm f) {
    for (auto& [a, s] : f.at) s *= c;
    return f;
  }
  bool equal_on_common_window(const LocalForm& o) const {
    for (const auto& [a, s] : at)
      if (!s.equal_on_common_window(o.series(a))) return false;
    for (const auto& [a, s] : o.at)
      if (!s.equal_on_common_window(series(a))) return false;
    return true;
  }
};

/// Finite combination sum c_{a,k} Gamma_{a,k}, k a nonzero integer.
struct LocalCycle {
  std::map<Label, Scalar> coeffs;

  static LocalCycle gamma(int a, int k, Scalar c = Scalar(1)) {
    if (k == 0) fail(ErrorKind::BadDeclaration, "Gamma_{a,0} is not a local cycle");
    LocalCycle g;
    g.coeffs[{a, k}] = std::move(c);
    return g;
  }
  /// B_{a,k} = (1/k) Gamma_{a,-k}.
  static LocalCycle b_cycle(const Label& i) {
    if (i.k < 1) fail(ErrorKind::BadDeclaration, "B-cycle index must be positive");
    return gamma(i.point, -i.k, Scalar(Rational(1, i.k)));
  }

  LocalCycle& operator+=(const LocalCycle& o) {
    for (const auto& [l, c] : o.coeffs) {
      Scalar& v = coeffs[l];
      v += c;
      if (v.is_zero()) coeffs.erase(l);
    }
    return *this;
  }
  friend LocalCycle operator+(LocalCycle a, const LocalCycle& b) { return a += b; }
  friend LocalCycle operator*(const Scalar& s, LocalCycle g) {
    if (s.is_zero()) return {};
    for (auto& [l, c] : g.coeffs) c *= s;
    return g;
  }
  friend bool operator==(const LocalCycle& a, const LocalCycle& b) { return a.coeffs == b.coeffs; }
};

/// Multiplier of the formal unit (2 pi i)^{-1}.
struct IntersectionValue {
  Scalar multiplier;
  friend bool operator==(const IntersectionValue&, const IntersectionValue&) = default;
};

/// <gamma, w> = sum c_{a,k} Res zeta^{-k} w = sum c_{a,k} [zeta^{k-1}] w.
inline Scalar pair_cycle_form(const LocalCycle& g, const LocalForm& w) {
  Scalar out;
  for (const auto& [l, c] : g.coeffs) out += c * w.series(l.point).coefficient(l.k - 1);
  return out;
}

/// Bhat(Gamma_{a,k})(z) = integral over the cycle of B(z, .), spectator z exterior.
inline LocalForm bhat(const LocalCycle& g, const CurveData& c) {
  LocalForm out;
  const int prec = c.phi_precision();
  for (const auto& p : c.points()) {
    LaurentSeries s(SeriesKind::Form, kNegInf, c.has_phi() ? prec - 1 : kPosInf);
    out.at.emplace(p.label, s);
  }
  for (const auto& [l, coef] : g.coeffs) {
    if (l.k < 0) continue;  // integrand holomorphic at the point once z is exterior
    out.series_mut(l.point).add_to(-l.k - 1, coef * Scalar(l.k));
    if (!c.has_phi()) continue;
    for (const auto& p : c.points())
      for (int j = 1; j <= prec; ++j) out.series_mut(p.label).add_to(j - 1, coef * c.phi({p.label, j}, l));
  }
  return out;
}

/// Chat restricted to polar forms: the combination of Gamma_{a,k}, k >= 1, whose
/// Bhat reproduces the polar parts of w. With `check`, Bhat of the result must
/// equal w on the valid window, else not-in-range.
inline LocalCycle chatB_polar(const LocalForm& w, const CurveData& c, bool check = true) {
  LocalCycle out;
  for (const auto& [a, s] : w.at) {
    for (const auto& [e, v] : s.terms()) {
      if (e == -1) fail(ErrorKind::NotInRange, "form has a residue at point " + std::to_string(a));
      if (e > -1) continue;  // analytic parts are checked below
      const int k = -e - 1;
      out += LocalCycle::gamma(a, k, v * Scalar(Rational(1, k)));
    }
  }
  if (check && !bhat(out, c).equal_on_common_window(w))
    fail(ErrorKind::NotInRange, "form is not in the image of Bhat");
  return out;
}

/// Pi = Chat o Bhat: keeps the k >= 1 part and kills the kernel directions.
inline LocalCycle projection(const LocalCycle& g, const CurveData& c) {
  return chatB_polar(bhat(g, c), c, false);
}

/// gamma1 cap gamma2 = (2 pi i)^{-1} (<gamma1, Bhat gamma2> - <gamma2, Bhat gamma1>).
inline IntersectionValue intersection(const LocalCycle& g1, const LocalCycle& g2, const CurveData& c) {
  return {pair_cycle_form(g1, bhat(g2, c)) - pair_cycle_form(g2, bhat(g1, c))};
}

/// Tautological pairing. The cycle is oriented so that its flow is the rescaling
/// y -> (1 + eps) y on correlators: <eta, w> = -sum_a Res Phi_a w with Phi_a the
/// primitive of omega_{0,1} vanishing at a.
inline Scalar eta_pairing(const LocalForm& w, const CurveData& c) {
  Scalar via_primitive, via_times;
  for (const auto& p : c.points()) {
    const LaurentSeries& s = w.series(p.label);
    if (s.in_window(-1) && !s.coefficient(-1).is_zero())
      fail(ErrorKind::IllDefinedPairing, "form has a residue at point " + std::to_string(p.label));
    if (s.is_zero()) continue;
    LaurentSeries phi = c.omega01(p.label).primitive();
    via_primitive += (phi * s).residue();
    for (const auto& [k, t] : p.times)
      via_times += t * Scalar(Rational(1, k)) * s.coefficient(-k - 1);
  }
  if (!(via_primitive == via_times)) fail(ErrorKind::Internal, "eta pairing evaluations disagree");
  return -via_times;
}

}  // namespace trc
