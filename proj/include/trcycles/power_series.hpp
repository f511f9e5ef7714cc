#pragma once

// Dense truncated power series in one and two variables. Used for localizing
// global curves, where every quantity is a Taylor expansion of a fixed length.

#include <gmpxx.h>

#include <vector>

#include "trcycles/errors.hpp"
#include "trcycles/scalar.hpp"

namespace trc::detail {

/// c[0] + c[1] u + ... + c[n-1] u^{n-1} + O(u^n).
struct PowerSeries {
  std::vector<Scalar> c;

  PowerSeries() = default;
  explicit PowerSeries(std::size_t n) : c(n) {}

  std::size_t size() const { return c.size(); }
  Scalar at(std::size_t i) const { return i < c.size() ? c[i] : Scalar(); }

  static PowerSeries constant(const Scalar& v, std::size_t n) {
    PowerSeries p(n);
    if (n) p.c[0] = v;
    return p;
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(std::min(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out.c[i] = a.c[i] + b.c[i];
    return out;
  }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    const std::size_t n = std::min(a.size(), b.size());
    PowerSeries out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.c[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < n; ++j)
        if (!b.c[j].is_zero()) out.c[i + j] += a.c[i] * b.c[j];
    }
    return out;
  }

  friend PowerSeries operator*(const Scalar& s, PowerSeries a) {
    for (auto& v : a.c) v *= s;
    return a;
  }

  PowerSeries inverse() const {
    if (c.empty() || c[0].is_zero()) fail(ErrorKind::Internal, "power series inverse needs a unit");
    PowerSeries out(size());
    const Scalar inv0 = c[0].inverse();
    for (std::size_t m = 0; m < size(); ++m) {
      Scalar acc = m == 0 ? Scalar(1) : Scalar();
      for (std::size_t i = 1; i <= m; ++i)
        if (!c[i].is_zero()) acc -= c[i] * out.c[m - i];
      out.c[m] = acc * inv0;
    }
    return out;
  }

  PowerSeries derivative() const {
    PowerSeries out(size() ? size() - 1 : 0);
    for (std::size_t i = 1; i < size(); ++i) out.c[i - 1] = c[i] * Scalar(static_cast<long>(i));
    return out;
  }

  /// (1 + v)^p for v with zero constant term, p rational.
  static PowerSeries binomial_power(const PowerSeries& v, const Rational& p) {
    const std::size_t n = v.size();
    PowerSeries result = constant(Scalar(1), n), term = constant(Scalar(1), n);
    Rational coeff = 1;
    for (std::size_t m = 1; m < n; ++m) {
      coeff *= (p - Rational(static_cast<long>(m) - 1)) / Rational(static_cast<long>(m));
      term = term * v;
      result = result + Scalar(coeff) * term;
    }
    return result;
  }

  /// this(inner(t)) for inner with zero constant term.
  PowerSeries compose(const PowerSeries& inner) const {
    const std::size_t n = std::min(size(), inner.size());
    PowerSeries out = constant(Scalar(), n);
    for (std::size_t i = size(); i-- > 0;) {
      out = out * inner;
      out.c[0] += c[i];
    }
    return out;
  }
};

/// Dense bivariate series sum c[i][j] s^i t^j with i, j < n.
struct BiSeries {
  std::size_t n = 0;
  std::vector<Scalar> c;

  explicit BiSeries(std::size_t size) : n(size), c(size * size) {}

  Scalar& operator()(std::size_t i, std::size_t j) { return c[i * n + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return c[i * n + j]; }

  friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    BiSeries out(a.n);
    for (std::size_t i = 0; i < a.n; ++i)
      for (std::size_t j = 0; j < a.n; ++j) {
        if (a(i, j).is_zero()) continue;
        for (std::size_t p = 0; i + p < a.n; ++p)
          for (std::size_t q = 0; j + q < a.n; ++q)
            if (!b(p, q).is_zero()) out(i + p, j + q) += a(i, j) * b(p, q);
      }
    return out;
  }

  BiSeries inverse() const {
    if (c[0].is_zero()) fail(ErrorKind::Internal, "bivariate inverse needs a unit");
    BiSeries out(n);
    const Scalar inv0 = c[0].inverse();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Scalar acc = (i == 0 && j == 0) ? Scalar(1) : Scalar();
        for (std::size_t p = 0; p <= i; ++p)
          for (std::size_t q = 0; q <= j; ++q) {
            if (p == 0 && q == 0) continue;
            if (!(*this)(p, q).is_zero()) acc -= (*this)(p, q) * out(i - p, j - q);
          }
        out(i, j) = acc * inv0;
      }
    return out;
  }

  BiSeries d_first() const {
    BiSeries out(n);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i - 1, j) = (*this)(i, j) * Scalar(static_cast<long>(i));
    return out;
  }

  BiSeries d_second() const {
    BiSeries out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 1; j < n; ++j) out(i, j - 1) = (*this)(i, j) * Scalar(static_cast<long>(j));
    return out;
  }
};

}  // namespace trc::detail
