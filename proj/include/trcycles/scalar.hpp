#pragma once

// Exact scalars: elements of the cyclotomic field Q(rho_n), rho_n = exp(2 pi i / n),
// stored as polynomials in rho_n of degree < deg(Phi_n) with GMP rational coefficients.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "trcycles/errors.hpp"

namespace trc {

using Rational = mpq_class;

namespace detail {

using QPoly = std::vector<Rational>;

inline void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

// Polynomial division with remainder; b must be nonzero.
inline void poly_divmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  const Rational lead = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    Rational f = a.back() / lead;
    q[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    trim(a);
  }
  trim(q);
  r = std::move(a);
}

inline QPoly poly_mod(const QPoly& a, const QPoly& m) {
  QPoly q, r;
  poly_divmod(a, m, q, r);
  return r;
}

/// n-th cyclotomic polynomial, cached.
inline const QPoly& cyclotomic(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<QPoly>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return *it->second;
  // Moebius inversion: Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}.
  auto mobius = [](int m) {
    int res = 1;
    for (int pr = 2; pr * pr <= m; ++pr) {
      if (m % pr == 0) {
        m /= pr;
        if (m % pr == 0) return 0;
        res = -res;
      }
    }
    if (m > 1) res = -res;
    return res;
  };
  QPoly num{Rational(1)}, den{Rational(1)};
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const int mu_v = mobius(n / d);
    if (mu_v == 0) continue;
    QPoly xd(static_cast<std::size_t>(d) + 1, Rational(0));
    xd[0] = -1;
    xd[d] = 1;
    if (mu_v > 0)
      num = poly_mul(num, xd);
    else
      den = poly_mul(den, xd);
  }
  QPoly q, r;
  poly_divmod(num, den, q, r);
  auto owned = std::make_unique<QPoly>(std::move(q));
  const QPoly& ref = *owned;
  cache.emplace(n, std::move(owned));
  return ref;
}

// Inverse of a modulo m (m irreducible, a nonzero mod m) by the extended Euclidean algorithm.
inline QPoly poly_inverse_mod(const QPoly& a, const QPoly& m) {
  QPoly r0 = m, r1 = poly_mod(a, m);
  QPoly s0{}, s1{Rational(1)};
  if (r1.empty()) fail(ErrorKind::Internal, "division by zero in cyclotomic field");
  while (r1.size() > 1) {
    QPoly q, r;
    poly_divmod(r0, r1, q, r);
    QPoly qs = poly_mul(q, s1);
    QPoly s2 = s0;
    if (s2.size() < qs.size()) s2.resize(qs.size(), Rational(0));
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) fail(ErrorKind::Internal, "non-invertible element in cyclotomic field");
  }
  // r1 is a nonzero constant c: s1 * a = c (mod m)
  const Rational c = r1[0];
  for (auto& v : s1) v /= c;
  return poly_mod(s1, m);
}

}  // namespace detail

/// Element of Q(rho_n). Rational values are always stored with order 1.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : coeffs_{Rational(v)} { normalize(); }  // NOLINT
  Scalar(int v) : Scalar(static_cast<long>(v)) {}        // NOLINT
  Scalar(const Rational& v) : coeffs_{v} {               // NOLINT
    coeffs_[0].canonicalize();
    normalize();
  }
  Scalar(long num, long den) : coeffs_{Rational(num, den)} {
    if (den == 0) fail(ErrorKind::Internal, "zero denominator");
    coeffs_[0].canonicalize();
    normalize();
  }

  /// rho_n^j.
  static Scalar root_of_unity(int n, long j) {
    if (n <= 0) fail(ErrorKind::Internal, "root of unity order must be positive");
    j %= n;
    if (j < 0) j += n;
    if (n == 1 || j == 0) return Scalar(1);
    if (2 * j == n) return Scalar(-1);
    Scalar s;
    s.order_ = n;
    detail::QPoly p(static_cast<std::size_t>(j) + 1, Rational(0));
    p[j] = 1;
    s.coeffs_ = detail::poly_mod(p, detail::cyclotomic(n));
    s.normalize();
    return s;
  }

  /// Builds sum_i c_i rho_n^i and reduces it.
  static Scalar from_coefficients(int n, std::vector<Rational> c) {
    Scalar s;
    s.order_ = n;
    s.coeffs_ = detail::poly_mod(c, detail::cyclotomic(n));
    s.normalize();
    return s;
  }

  int order() const { return order_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const { return order_ == 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational rational() const {
    if (!is_rational()) fail(ErrorKind::Internal, "scalar is not rational: " + to_string());
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
  }

  /// Same value expressed in Q(rho_n); n must be a multiple of order().
  Scalar embedded(int n) const {
    if (n % order_ != 0) fail(ErrorKind::Internal, "cannot embed Q(rho_" + std::to_string(order_) +
                                                       ") into Q(rho_" + std::to_string(n) + ")");
    if (n == order_) return *this;
    if (is_rational()) {
      Scalar s = *this;
      s.order_ = n;
      return s;  // deliberately not normalized: caller works in Q(rho_n)
    }
    const int step = n / order_;
    detail::QPoly p(coeffs_.size() * step, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) p[i * step] = coeffs_[i];
    Scalar s;
    s.order_ = n;
    s.coeffs_ = detail::poly_mod(p, detail::cyclotomic(n));
    return s;  // deliberately not normalized: caller works in Q(rho_n)
  }

  Scalar& operator+=(const Scalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (order_ == o.order_ || o.is_rational()) {
      if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
      for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
      normalize();
      return *this;
    }
    const int n = std::lcm(order_, o.order_);
    Scalar a = embedded(n), b = o.embedded(n);
    if (a.coeffs_.size() < b.coeffs_.size()) a.coeffs_.resize(b.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    a.normalize();
    return *this = std::move(a);
  }

  Scalar& operator-=(const Scalar& o) { return *this += -o; }

  Scalar& operator*=(const Scalar& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = Scalar();
    if (o.is_rational()) {
      for (auto& c : coeffs_) c *= o.coeffs_[0];
      return *this;
    }
    if (is_rational()) {
      Rational f = coeffs_[0];
      *this = o;
      for (auto& c : coeffs_) c *= f;
      return *this;
    }
    const int n = std::lcm(order_, o.order_);
    const Scalar a = embedded(n), b = o.embedded(n);
    Scalar s;
    s.order_ = n;
    s.coeffs_ = detail::poly_mod(detail::poly_mul(a.coeffs_, b.coeffs_), detail::cyclotomic(n));
    s.normalize();
    return *this = std::move(s);
  }

  Scalar inverse() const {
    if (is_zero()) fail(ErrorKind::Internal, "division by zero");
    if (is_rational()) return Scalar(Rational(1) / coeffs_[0]);
    Scalar s;
    s.order_ = order_;
    s.coeffs_ = detail::poly_inverse_mod(coeffs_, detail::cyclotomic(order_));
    s.normalize();
    return s;
  }

  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  Scalar operator-() const {
    Scalar s = *this;
    for (auto& c : s.coeffs_) c = -c;
    return s;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
    return (a - b).is_zero();
  }

  Scalar pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  /// "p/q" for rationals, "cyc<n>(c0,c1,...)" meaning sum c_i rho_n^i otherwise.
  std::string to_string() const {
    if (is_rational()) return rational().get_str();
    std::string s = "cyc" + std::to_string(order_) + "(";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i) s += ",";
      s += coeffs_[i].get_str();
    }
    return s + ")";
  }

  static Rational parse_rational(std::string_view text) {
    std::string t(text);
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }),
            t.end());
    if (t.empty()) fail(ErrorKind::Parse, "empty rational");
    if (t.front() == '+') t.erase(t.begin());
    const auto slash = t.find('/');
    auto check_int = [&](const std::string& part) {
      std::size_t i = (!part.empty() && part[0] == '-') ? 1 : 0;
      if (i == part.size()) fail(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
      for (; i < part.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(part[i])))
          fail(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
    };
    check_int(slash == std::string::npos ? t : t.substr(0, slash));
    if (slash != std::string::npos) {
      const std::string den = t.substr(slash + 1);
      check_int(den);
      if (den[0] == '-') fail(ErrorKind::Parse, "negative denominator in '" + std::string(text) + "'");
    }
    Rational q;
    if (q.set_str(t, 10) != 0) fail(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
    if (sgn(q.get_den()) == 0) fail(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
  }

  static Scalar parse(std::string_view text) {
    if (text.rfind("cyc", 0) == 0) {
      const auto open = text.find('('), close = text.rfind(')');
      if (open == std::string_view::npos || close == std::string_view::npos || close < open)
        fail(ErrorKind::Parse, "malformed cyclotomic scalar '" + std::string(text) + "'");
      int n = 0;
      try {
        n = std::stoi(std::string(text.substr(3, open - 3)));
      } catch (const std::exception&) {
        fail(ErrorKind::Parse, "malformed cyclotomic order in '" + std::string(text) + "'");
      }
      if (n < 1) fail(ErrorKind::Parse, "cyclotomic order must be positive");
      std::vector<Rational> c;
      std::string_view body = text.substr(open + 1, close - open - 1);
      while (!body.empty()) {
        const auto comma = body.find(',');
        c.push_back(parse_rational(body.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
      }
      return from_coefficients(n, std::move(c));
    }
    return Scalar(parse_rational(text));
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  void normalize() {
    detail::trim(coeffs_);
    if (order_ != 1 && coeffs_.size() <= 1) order_ = 1;
  }

  int order_ = 1;
  std::vector<Rational> coeffs_;
};

}  // namespace trc
