#pragma once

// Truncation-tracked Laurent series in one local variable.

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <string>

#include "trcycles/errors.hpp"
#include "trcycles/scalar.hpp"

namespace trc {

inline constexpr int kPosInf = INT_MAX / 4;
inline constexpr int kNegInf = -kPosInf;

namespace detail {
inline int sat_add(int a, int b) {
  if (a >= kPosInf || b >= kPosInf) return kPosInf;
  if (a <= kNegInf || b <= kNegInf) return kNegInf;
  return std::clamp(a + b, kNegInf, kPosInf);
}
}  // namespace detail

/// Whether a series is a function f(z) or a 1-form f(z) dz.
enum class SeriesKind { Function, Form };

/// Sparse Laurent series. Coefficients are exact for exponents in [lo, hi];
/// exponents above hi (or below lo) are unknown. hi == kPosInf means exact.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  explicit LaurentSeries(SeriesKind kind, int lo = kNegInf, int hi = kPosInf)
      : kind_(kind), lo_(lo), hi_(hi) {}

  static LaurentSeries monomial(int exponent, Scalar c, SeriesKind kind = SeriesKind::Function) {
    LaurentSeries s(kind);
    s.set(exponent, std::move(c));
    return s;
  }

  SeriesKind kind() const { return kind_; }
  bool is_form() const { return kind_ == SeriesKind::Form; }
  int valid_min() const { return lo_; }
  int valid_max() const { return hi_; }
  bool exact() const { return hi_ >= kPosInf && lo_ <= kNegInf; }
  const std::map<int, Scalar>& terms() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  bool in_window(int e) const { return e >= lo_ && e <= hi_; }

  /// Coefficient of z^e; throws when e is outside the valid window.
  Scalar coefficient(int e) const {
    if (!in_window(e))
      fail(ErrorKind::InsufficientPrecision,
           "exponent " + std::to_string(e) + " outside valid window " + window_string());
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? Scalar() : it->second;
  }

  void set(int e, Scalar c) {
    if (!in_window(e)) return;
    if (c.is_zero())
      coeffs_.erase(e);
    else
      coeffs_[e] = std::move(c);
  }

  void add_to(int e, const Scalar& c) {
    if (c.is_zero() || !in_window(e)) return;
    auto [it, inserted] = coeffs_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  std::optional<int> lowest_exponent() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.begin()->first;
  }

  /// Lowest exponent whose coefficient may be nonzero (for window propagation).
  int effective_low() const {
    int low = coeffs_.empty() ? detail::sat_add(hi_, 1) : coeffs_.begin()->first;
    return std::min(low, lo_ <= kNegInf ? low : lo_);
  }

  LaurentSeries with_kind(SeriesKind k) const {
    LaurentSeries s = *this;
    s.kind_ = k;
    return s;
  }

  /// Narrows the window; never widens it.
  LaurentSeries& restrict_window(int lo, int hi) {
    lo_ = std::max(lo_, lo);
    hi_ = std::min(hi_, hi);
    if (lo_ > hi_)
      fail(ErrorKind::InsufficientPrecision, "valid window collapsed to " + window_string());
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      if (!in_window(it->first))
        it = coeffs_.erase(it);
      else
        ++it;
    }
    return *this;
  }

  LaurentSeries& truncate_above(int hi) {
    if (hi < hi_) restrict_window(lo_, hi);
    return *this;
  }

  LaurentSeries& operator+=(const LaurentSeries& o) {
    if (kind_ != o.kind_) fail(ErrorKind::Internal, "adding a function to a form");
    restrict_window(o.lo_, o.hi_);
    for (const auto& [e, c] : o.coeffs_) add_to(e, c);
    return *this;
  }

  LaurentSeries& operator-=(const LaurentSeries& o) { return *this += o * Scalar(-1); }

  LaurentSeries& operator*=(const Scalar& c) {
    if (c.is_zero()) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [e, v] : coeffs_) v *= c;
    return *this;
  }

  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator*(LaurentSeries a, const Scalar& c) { return a *= c; }
  friend LaurentSeries operator*(const Scalar& c, LaurentSeries a) { return a *= c; }

  /// Cauchy product. Function x Function -> Function, Function x Form -> Form.
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.is_form() && b.is_form()) fail(ErrorKind::Internal, "product of two 1-forms is not a 1-form");
    const SeriesKind kind = (a.is_form() || b.is_form()) ? SeriesKind::Form : SeriesKind::Function;
    const int alow = a.effective_low(), blow = b.effective_low();
    int hi = std::min(detail::sat_add(a.hi_, blow), detail::sat_add(b.hi_, alow));
    int lo = kNegInf;
    if (a.lo_ > kNegInf || b.lo_ > kNegInf)
      lo = std::max(detail::sat_add(a.lo_, blow), detail::sat_add(b.lo_, alow));
    if (lo > hi) fail(ErrorKind::InsufficientPrecision, "product window collapsed");
    LaurentSeries out(kind, lo, hi);
    for (const auto& [ea, ca] : a.coeffs_) {
      for (const auto& [eb, cb] : b.coeffs_) {
        const int e = ea + eb;
        if (e > hi) break;
        if (e < lo) continue;
        out.add_to(e, ca * cb);
      }
    }
    return out;
  }

  /// Multiplicative inverse, computed up to exponent `want_hi` (further limited by precision).
  LaurentSeries inverse(int want_hi) const {
    if (is_form()) fail(ErrorKind::Internal, "cannot invert a 1-form");
    if (coeffs_.empty()) fail(ErrorKind::InsufficientPrecision, "inverting a series with no known terms");
    const int low = coeffs_.begin()->first;
    if (lo_ > kNegInf && lo_ > low) fail(ErrorKind::InsufficientPrecision, "leading term unknown");
    const int hi = std::min(want_hi, detail::sat_add(hi_, -2 * low));
    if (hi < -low) fail(ErrorKind::InsufficientPrecision, "inverse window collapsed");
    const Scalar lead_inv = coeffs_.begin()->second.inverse();
    if (coeffs_.size() == 1 && hi_ == kPosInf) return monomial(-low, lead_inv);
    if (hi == kPosInf) fail(ErrorKind::Internal, "inverse of an infinite series needs a finite window");
    LaurentSeries out(SeriesKind::Function, kNegInf, hi);
    // out = z^{-low} * sum d_m z^m with sum_{i} c_{low+i} d_{m-i} = delta_{m0}
    std::map<int, Scalar> d;
    for (int m = 0; -low + m <= hi; ++m) {
      Scalar acc = (m == 0) ? Scalar(1) : Scalar();
      for (const auto& [e, c] : coeffs_) {
        const int i = e - low;
        if (i == 0) continue;
        if (i > m) break;
        auto it = d.find(m - i);
        if (it != d.end()) acc -= c * it->second;
      }
      acc *= lead_inv;
      if (!acc.is_zero()) d.emplace(m, acc);
    }
    for (auto& [m, c] : d) out.set(m - low, std::move(c));
    return out;
  }

  /// Coefficient of z^{-1} dz.
  Scalar residue() const {
    if (!is_form()) fail(ErrorKind::Internal, "residue of a function; expected a 1-form");
    return coefficient(-1);
  }

  /// Primitive vanishing at z = 0 of a residue-free 1-form.
  LaurentSeries primitive() const {
    if (!is_form()) fail(ErrorKind::Internal, "primitive of a function; expected a 1-form");
    if (in_window(-1)) {
      if (!coefficient(-1).is_zero())
        fail(ErrorKind::NoPrimitive, "1-form has residue " + coefficient(-1).to_string());
    } else if (effective_low() <= -1) {
      fail(ErrorKind::InsufficientPrecision, "residue of 1-form not inside valid window");
    }
    LaurentSeries out(SeriesKind::Function, detail::sat_add(lo_, 1), detail::sat_add(hi_, 1));
    for (const auto& [e, c] : coeffs_) out.set(e + 1, c * Scalar(Rational(1, e + 1)));
    return out;
  }

  /// Formal exterior derivative of a function.
  LaurentSeries derivative() const {
    if (is_form()) fail(ErrorKind::Internal, "derivative of a 1-form");
    LaurentSeries out(SeriesKind::Form, detail::sat_add(lo_, -1), detail::sat_add(hi_, -1));
    for (const auto& [e, c] : coeffs_)
      if (e != 0) out.set(e - 1, c * Scalar(e));
    return out;
  }

  /// Pullback by z -> rho_r^j z. For 1-forms the factor rho^j from dz is included.
  /// A positive `field_order` bounds the coefficient field Q(rho_field_order).
  LaurentSeries rotate(int r, int j, int field_order = 0) const {
    if (r <= 0) fail(ErrorKind::Internal, "rotation order must be positive");
    if (field_order > 0 && r > 2 && field_order % r != 0)
      fail(ErrorKind::FieldExtensionRequired,
           "Q(rho_" + std::to_string(field_order) + ") does not contain rho_" + std::to_string(r));
    if (((j % r) + r) % r == 0) return *this;
    LaurentSeries out = *this;
    const int shift = is_form() ? 1 : 0;
    for (auto& [e, c] : out.coeffs_) c *= Scalar::root_of_unity(r, static_cast<long>(j) * (e + shift));
    return out;
  }

  /// True iff both series agree on every exponent inside both windows.
  bool equal_on_common_window(const LaurentSeries& o) const {
    const int lo = std::max(lo_, o.lo_), hi = std::min(hi_, o.hi_);
    auto inside = [&](int e) { return e >= lo && e <= hi; };
    for (const auto& [e, c] : coeffs_)
      if (inside(e) && !(o.coefficient(e) == c)) return false;
    for (const auto& [e, c] : o.coeffs_)
      if (inside(e) && coeffs_.find(e) == coeffs_.end()) return false;
    return true;
  }

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.kind_ != b.kind_ || a.lo_ != b.lo_ || a.hi_ != b.hi_ || a.coeffs_.size() != b.coeffs_.size())
      return false;
    auto it = b.coeffs_.begin();
    for (const auto& [e, c] : a.coeffs_) {
      if (it->first != e || !(it->second == c)) return false;
      ++it;
    }
    return true;
  }

  std::string window_string() const {
    auto show = [](int v) {
      if (v >= kPosInf) return std::string("+inf");
      if (v <= kNegInf) return std::string("-inf");
      return std::to_string(v);
    };
    return "[" + show(lo_) + ", " + show(hi_) + "]";
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [e, c] : coeffs_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")z^" + std::to_string(e);
    }
    if (s.empty()) s = "0";
    if (is_form()) s = "(" + s + ")dz";
    return s + " on " + window_string();
  }

 private:
  SeriesKind kind_ = SeriesKind::Function;
  int lo_ = kNegInf;
  int hi_ = kPosInf;
  std::map<int, Scalar> coeffs_;
};

}  // namespace trc
