#pragma once

// Spectral-curve representatives: purely local data at ramification points, and
// genus-zero global curves that are localized into the same data.
//
// Local conventions at a ramification point a of order r: the local coordinate
// zeta satisfies x - x(a) = zeta^r, the 1-form y = omega_{0,1} reads
// sum_k t_k zeta^{k-1} dzeta, and the Bergman kernel between points a and b is
//   delta_ab dzeta1 dzeta2 / (zeta1 - zeta2)^2
//     + sum_{k,j >= 1} phi[(a,k),(b,j)] zeta1^{k-1} zeta2^{j-1} dzeta1 dzeta2.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "trcycles/errors.hpp"
#include "trcycles/laurent.hpp"
#include "trcycles/power_series.hpp"
#include "trcycles/scalar.hpp"

namespace trc {

/// Local-cycle label (a, k): ramification point label a, mode k.
struct Label {
  int point = 0;
  int k = 0;
  friend auto operator<=>(const Label&, const Label&) = default;
  std::string to_string() const { return "(" + std::to_string(point) + "," + std::to_string(k) + ")"; }
};

struct RamificationPoint {
  int label = 0;
  int order = 2;
  std::map<int, Scalar> times;  // k -> t_{a,k}, nonzero entries only

  Scalar time(int k) const {
    auto it = times.find(k);
    return it == times.end() ? Scalar() : it->second;
  }
  friend bool operator==(const RamificationPoint&, const RamificationPoint&) = default;
};

/// Purely local spectral curve: ramification points, local times, and the
/// analytic part of the Bergman kernel.
struct LocalCurve {
  std::vector<RamificationPoint> points;
  std::map<std::pair<Label, Label>, Scalar> phi;  // key stored with first <= second

  friend bool operator==(const LocalCurve&, const LocalCurve&) = default;
};

enum class Provenance { Local, Localized };

/// Validated curve plus truncation bookkeeping.
class CurveData {
 public:
  const LocalCurve& curve() const { return curve_; }
  const std::vector<RamificationPoint>& points() const { return curve_.points; }
  int field_order() const { return field_order_; }
  Provenance provenance() const { return provenance_; }
  /// Largest k with t_{a,k} known (kPosInf for exact local data).
  int times_precision() const { return times_precision_; }
  /// Largest mode index with phi known (kPosInf for exact local data).
  int phi_precision() const { return phi_precision_; }
  int n_max() const { return n_max_; }

  bool has_phi() const { return !curve_.phi.empty(); }
  int max_order() const {
    int r = 0;
    for (const auto& p : curve_.points) r = std::max(r, p.order);
    return r;
  }

  const RamificationPoint& point(int label) const {
    for (const auto& p : curve_.points)
      if (p.label == label) return p;
    fail(ErrorKind::Internal, "unknown ramification point label " + std::to_string(label));
  }

  Scalar phi(const Label& i, const Label& j) const {
    if (std::max(i.k, j.k) > phi_precision_)
      fail(ErrorKind::InsufficientPrecision,
           "phi" + i.to_string() + j.to_string() + " beyond truncation " + std::to_string(phi_precision_));
    auto key = i <= j ? std::pair{i, j} : std::pair{j, i};
    auto it = curve_.phi.find(key);
    return it == curve_.phi.end() ? Scalar() : it->second;
  }

  /// omega_{0,1} at point a as a 1-form in the local coordinate.
  LaurentSeries omega01(int label) const {
    LaurentSeries s(SeriesKind::Form, kNegInf, detail::sat_add(times_precision_, -1));
    for (const auto& [k, t] : point(label).times) s.set(k - 1, t);
    return s;
  }

  /// Same curve, bookkeeping aside.
  bool same_curve(const CurveData& o) const { return curve_ == o.curve_; }

 private:
  friend CurveData validate_local_curve(LocalCurve raw, int times_precision, int phi_precision,
                                        Provenance provenance, int extra_field_order);
  LocalCurve curve_;
  int field_order_ = 1;
  Provenance provenance_ = Provenance::Local;
  int times_precision_ = kPosInf;
  int phi_precision_ = kPosInf;
  int n_max_ = 0;
};

/// Checks admissibility: r_a >= 2, t_{a,k} = 0 for k <= r_a, t_{a,r_a+1} != 0,
/// phi indices valid. Normalizes sparse maps (zero entries dropped, phi keys sorted).
inline CurveData validate_local_curve(LocalCurve raw, int times_precision = kPosInf,
                                      int phi_precision = kPosInf,
                                      Provenance provenance = Provenance::Local,
                                      int extra_field_order = 1) {
  if (raw.points.empty()) fail(ErrorKind::NotARamificationPoint, "curve has no ramification points");
  CurveData out;
  int field = extra_field_order;
  std::vector<int> labels;
  for (auto& p : raw.points) {
    const std::string where = "point " + std::to_string(p.label);
    if (p.order < 2) fail(ErrorKind::NotARamificationPoint, where + " has order " + std::to_string(p.order));
    if (std::find(labels.begin(), labels.end(), p.label) != labels.end())
      fail(ErrorKind::BadDeclaration, "duplicate label " + std::to_string(p.label));
    labels.push_back(p.label);
    for (auto it = p.times.begin(); it != p.times.end();) {
      if (it->second.is_zero()) {
        it = p.times.erase(it);
        continue;
      }
      if (it->first <= p.order)
        fail(ErrorKind::InadmissibleTimes,
             where + ": t_" + std::to_string(it->first) + " must vanish for k <= " + std::to_string(p.order));
      ++it;
    }
    if (p.time(p.order + 1).is_zero())
      fail(ErrorKind::NonGenericRamification, where + ": t_" + std::to_string(p.order + 1) + " = 0");
    field = std::lcm(field, p.order);
    for (const auto& [k, t] : p.times) field = std::lcm(field, std::max(1, t.order()));
  }
  std::sort(raw.points.begin(), raw.points.end(),
            [](const RamificationPoint& a, const RamificationPoint& b) { return a.label < b.label; });
  std::map<std::pair<Label, Label>, Scalar> phi;
  for (const auto& [key, v] : raw.phi) {
    auto [i, j] = key;
    for (const Label& l : {i, j}) {
      if (std::find(labels.begin(), labels.end(), l.point) == labels.end())
        fail(ErrorKind::BadDeclaration, "phi refers to unknown point " + std::to_string(l.point));
      if (l.k < 1) fail(ErrorKind::BadDeclaration, "phi mode index must be >= 1");
    }
    if (v.is_zero()) continue;
    auto canon = i <= j ? std::pair{i, j} : std::pair{j, i};
    if (auto it = phi.find(canon); it != phi.end() && !(it->second == v))
      fail(ErrorKind::BadDeclaration, "phi is not symmetric at " + i.to_string() + j.to_string());
    phi[canon] = v;
    field = std::lcm(field, std::max(1, v.order()));
  }
  raw.phi = std::move(phi);
  out.curve_ = std::move(raw);
  out.field_order_ = field == 2 ? 1 : field;
  out.provenance_ = provenance;
  out.times_precision_ = times_precision;
  out.phi_precision_ = phi_precision;
  out.n_max_ = std::min(times_precision, phi_precision);
  return out;
}

/// The curve (Sigma, x, lambda y, B): every time multiplied by lambda, B unchanged.
inline CurveData scale_curve(const CurveData& c, const Scalar& lambda) {
  if (lambda.is_zero()) fail(ErrorKind::DegenerateCurve, "scaling by zero");
  LocalCurve lc = c.curve();
  for (auto& p : lc.points)
    for (auto& [k, t] : p.times) t *= lambda;
  return validate_local_curve(std::move(lc), c.times_precision(), c.phi_precision(), c.provenance(),
                              std::lcm(c.field_order(), std::max(1, lambda.order())));
}

/// Rational function num(z)/den(z) with rational coefficients (ascending powers).
struct RationalFunction {
  std::vector<Rational> num{Rational(0)};
  std::vector<Rational> den{Rational(1)};

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;
};

struct DeclaredPoint {
  int label = 0;
  Rational at;
  int order = 2;
  friend bool operator==(const DeclaredPoint&, const DeclaredPoint&) = default;
};

/// Genus-zero curve with global coordinate z and B = dz1 dz2 / (z1 - z2)^2.
struct GlobalCurve {
  RationalFunction x, y;
  std::vector<DeclaredPoint> points;
  friend bool operator==(const GlobalCurve&, const GlobalCurve&) = default;
};

namespace detail {

// Taylor coefficients of p(alpha + u), ascending.
inline std::vector<Rational> taylor_shift(const std::vector<Rational>& p, const Rational& alpha) {
  std::vector<Rational> out(p.begin(), p.end());
  const std::size_t n = out.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) out[j - 1] += alpha * out[j];
  return out;
}

inline PowerSeries expand_rational_function(const RationalFunction& f, const Rational& alpha, std::size_t n) {
  auto to_series = [n](const std::vector<Rational>& coeffs) {
    PowerSeries s(n);
    for (std::size_t i = 0; i < n && i < coeffs.size(); ++i) s.c[i] = Scalar(coeffs[i]);
    return s;
  };
  PowerSeries num = to_series(taylor_shift(f.num, alpha));
  PowerSeries den = to_series(taylor_shift(f.den, alpha));
  if (den.at(0).is_zero())
    fail(ErrorKind::BadDeclaration, "rational function has a pole at z = " + alpha.get_str());
  return num * den.inverse();
}

inline bool exact_root(const mpz_class& v, int r, mpz_class& out) {
  if (sgn(v) < 0) return false;
  return mpz_root(out.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(r)) != 0;
}

// lambda with lambda^r = c, in Q or in Q(rho_{2r}) when c < 0 and r is even.
inline Scalar rth_root(const Rational& c, int r, int& field_needed) {
  Rational absval = abs(c);
  mpz_class nr, dr;
  if (!exact_root(absval.get_num(), r, nr) || !exact_root(absval.get_den(), r, dr))
    fail(ErrorKind::FieldExtensionRequired,
         "leading coefficient " + c.get_str() + " is not an " + std::to_string(r) + "-th power");
  Scalar root(Rational(nr, dr));
  if (sgn(c) > 0) return root;
  if (r % 2 == 1) return -root;
  field_needed = std::lcm(field_needed, 2 * r);
  return root * Scalar::root_of_unity(2 * r, 1);
}

}  // namespace detail

/// How the local coordinate is fixed from x. Monic: zeta^r = (x - x(a)) / c with c the
/// leading Taylor coefficient, so zeta = (z - a)(1 + O(z - a)) and everything stays
/// rational. Literal: zeta^r = x - x(a), which needs c to be an r-th power.
enum class Uniformizer { Monic, Literal };

/// Expands a genus-zero curve at its declared ramification points. Times and phi are
/// read off up to mode n_max. Galois-invariant time modes (r_a | k) are exact
/// differentials of polynomials in x; they never enter the recursion and are dropped.
inline CurveData localize_global_curve(const GlobalCurve& g, int n_max,
                                       Uniformizer mode = Uniformizer::Monic) {
  if (n_max < 1) fail(ErrorKind::BadDeclaration, "n_max must be positive");
  if (g.points.empty()) fail(ErrorKind::NotARamificationPoint, "no declared ramification points");
  struct Local {
    int label;
    Rational at;
    int order;
    detail::PowerSeries u_of_zeta;  // z - a as a series in zeta
  };
  std::vector<Local> locals;
  int field = 1;
  LocalCurve lc;
  const std::size_t len = static_cast<std::size_t>(n_max) + 2;
  for (const auto& dp : g.points) {
    const std::string where = "point " + std::to_string(dp.label);
    if (dp.order < 2) fail(ErrorKind::NotARamificationPoint, where + " declared with order < 2");
    const std::size_t xl = len + static_cast<std::size_t>(dp.order) + 2;
    detail::PowerSeries X = detail::expand_rational_function(g.x, dp.at, xl);
    for (int i = 1; i < dp.order; ++i)
      if (!X.at(static_cast<std::size_t>(i)).is_zero())
        fail(ErrorKind::BadDeclaration, where + ": x - x(a) vanishes to order " + std::to_string(i));
    const Scalar lead = X.at(static_cast<std::size_t>(dp.order));
    if (lead.is_zero())
      fail(ErrorKind::BadDeclaration, where + ": x - x(a) vanishes to order > " + std::to_string(dp.order));
    const Scalar lambda =
        mode == Uniformizer::Monic ? Scalar(1) : detail::rth_root(lead.rational(), dp.order, field);
    // V(u) = (x - x(a)) / (lead u^r) - 1
    detail::PowerSeries v(len);
    for (std::size_t i = 1; i < len; ++i) v.c[i] = X.at(i + static_cast<std::size_t>(dp.order)) / lead;
    detail::PowerSeries w =
        detail::PowerSeries::binomial_power(v, Rational(1, dp.order));  // (1+v)^{1/r}
    // zeta = lambda u w(u); invert: u = (zeta/lambda) / w(u)
    detail::PowerSeries winv = w.inverse();
    detail::PowerSeries u(len);
    const Scalar inv_lambda = lambda.inverse();
    if (len > 1) u.c[1] = inv_lambda;
    for (std::size_t it = 0; it < len; ++it) {
      detail::PowerSeries next = winv.compose(u);
      detail::PowerSeries shifted(len);
      for (std::size_t i = 1; i < len; ++i) shifted.c[i] = next.at(i - 1) * inv_lambda;
      u = shifted;
    }
    locals.push_back({dp.label, dp.at, dp.order, u});

    // omega_{0,1} = y(z) x'(z) dz pulled back to zeta.
    detail::PowerSeries ys = detail::expand_rational_function(g.y, dp.at, len);
    detail::PowerSeries xp(len);
    for (std::size_t i = 0; i < len; ++i) xp.c[i] = X.at(i + 1) * Scalar(static_cast<long>(i + 1));
    detail::PowerSeries integrand = (ys * xp).compose(u) * u.derivative();
    RamificationPoint rp;
    rp.label = dp.label;
    rp.order = dp.order;
    for (int k = 1; k <= n_max && static_cast<std::size_t>(k - 1) < integrand.size(); ++k) {
      if (k % dp.order == 0) continue;
      Scalar t = integrand.at(static_cast<std::size_t>(k - 1));
      if (!t.is_zero()) rp.times[k] = t;
    }
    lc.points.push_back(std::move(rp));
  }

  // Analytic part of B in local coordinates.
  const std::size_t bl = static_cast<std::size_t>(n_max) + 2;
  for (std::size_t ia = 0; ia < locals.size(); ++ia) {
    for (std::size_t ib = ia; ib < locals.size(); ++ib) {
      const Local& A = locals[ia];
      const Local& Bp = locals[ib];
      detail::BiSeries f(bl);
      if (ia == ib) {
        // phi = d1 d2 log((u(s) - u(t)) / (s - t))
        detail::BiSeries q(bl);
        for (std::size_t m = 1; m < A.u_of_zeta.size(); ++m)
          for (std::size_t i = 0; i < m && i < bl; ++i)
            if (m - 1 - i < bl) q(i, m - 1 - i) += A.u_of_zeta.at(m);
        detail::BiSeries dlog = q.d_first() * q.inverse();
        f = dlog.d_second();
      } else {
        detail::BiSeries d(bl), up(bl);
        d(0, 0) = Scalar(A.at - Bp.at);
        for (std::size_t i = 1; i < bl; ++i) {
          d(i, 0) += A.u_of_zeta.at(i);
          d(0, i) -= Bp.u_of_zeta.at(i);
        }
        detail::PowerSeries ua = A.u_of_zeta.derivative(), ub = Bp.u_of_zeta.derivative();
        for (std::size_t i = 0; i < bl; ++i)
          for (std::size_t j = 0; j < bl; ++j) up(i, j) = ua.at(i) * ub.at(j);
        detail::BiSeries dinv = d.inverse();
        f = up * dinv * dinv;
      }
      for (int k = 1; k <= n_max; ++k)
        for (int j = 1; j <= n_max; ++j) {
          const Scalar& v = f(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(j - 1));
          if (v.is_zero()) continue;
          Label li{A.label, k}, lj{Bp.label, j};
          if (ia == ib && lj < li) continue;
          lc.phi[li <= lj ? std::pair{li, lj} : std::pair{lj, li}] = v;
        }
    }
  }
  return validate_local_curve(std::move(lc), n_max, n_max, Provenance::Localized, field);
}

}  // namespace trc
