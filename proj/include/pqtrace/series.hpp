#pragma once
// Truncated formal power series in z whose coefficients are polynomials
// in w, over exact rationals. Just enough machinery for the generating
// function audit: add, multiply, divide by a series with constant term 1.

#include <stdexcept>
#include <vector>

#include "pqtrace/rational.hpp"

namespace pqtrace {

/// Dense polynomial in w; index = power of w.
using WPoly = std::vector<Rational>;

inline void wp_trim(WPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Rational wp_coeff(const WPoly& a, std::size_t k) {
  return k < a.size() ? a[k] : Rational(0);
}

inline bool wp_is_zero(const WPoly& a) {
  for (const auto& c : a)
    if (c != 0) return false;
  return true;
}

inline WPoly wp_add(const WPoly& a, const WPoly& b) {
  WPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = wp_coeff(a, i) + wp_coeff(b, i);
  wp_trim(out);
  return out;
}

inline WPoly wp_sub(const WPoly& a, const WPoly& b) {
  WPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = wp_coeff(a, i) - wp_coeff(b, i);
  wp_trim(out);
  return out;
}

inline WPoly wp_mul(const WPoly& a, const WPoly& b) {
  if (a.empty() || b.empty()) return {};
  WPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  wp_trim(out);
  return out;
}

/// Series sum_{n=0}^{order} c[n](w) z^n.
struct ZSeries {
  int order = 0;
  std::vector<WPoly> c;

  explicit ZSeries(int order_ = 0) : order(order_), c(order_ + 1) {}

  static ZSeries zero(int order) { return ZSeries(order); }

  /// coeff * z^zpow * w^wpow.
  static ZSeries monomial(int order, const Rational& coeff, int zpow, int wpow) {
    ZSeries s(order);
    if (zpow <= order && coeff != 0) {
      s.c[zpow] = WPoly(wpow + 1, Rational(0));
      s.c[zpow][wpow] = coeff;
    }
    return s;
  }

  /// 1/(1-z) truncated.
  static ZSeries geometric(int order) {
    ZSeries s(order);
    for (int n = 0; n <= order; ++n) s.c[n] = {Rational(1)};
    return s;
  }

  const WPoly& at(int n) const { return c[n]; }

  friend ZSeries operator+(const ZSeries& a, const ZSeries& b) {
    check_orders(a, b);
    ZSeries out(a.order);
    for (int n = 0; n <= a.order; ++n) out.c[n] = wp_add(a.c[n], b.c[n]);
    return out;
  }

  friend ZSeries operator-(const ZSeries& a, const ZSeries& b) {
    check_orders(a, b);
    ZSeries out(a.order);
    for (int n = 0; n <= a.order; ++n) out.c[n] = wp_sub(a.c[n], b.c[n]);
    return out;
  }

  friend ZSeries operator*(const ZSeries& a, const ZSeries& b) {
    check_orders(a, b);
    ZSeries out(a.order);
    for (int i = 0; i <= a.order; ++i) {
      if (wp_is_zero(a.c[i])) continue;
      for (int j = 0; i + j <= a.order; ++j) {
        if (wp_is_zero(b.c[j])) continue;
        out.c[i + j] = wp_add(out.c[i + j], wp_mul(a.c[i], b.c[j]));
      }
    }
    return out;
  }

  friend bool operator==(const ZSeries& a, const ZSeries& b) {
    if (a.order != b.order) return false;
    for (int n = 0; n <= a.order; ++n)
      if (!wp_is_zero(wp_sub(a.c[n], b.c[n]))) return false;
    return true;
  }

 private:
  static void check_orders(const ZSeries& a, const ZSeries& b) {
    if (a.order != b.order)
      throw std::invalid_argument("series truncation orders differ");
  }
};

/// Long division num/den. Requires den's constant term to be exactly the
/// constant polynomial 1, which makes the division well defined.
inline ZSeries zs_div(const ZSeries& num, const ZSeries& den) {
  if (num.order != den.order)
    throw std::invalid_argument("series truncation orders differ");
  WPoly u0 = den.c[0];
  wp_trim(u0);
  if (!(u0.size() == 1 && u0[0] == 1))
    throw std::domain_error("series division requires constant term 1");
  ZSeries g(num.order);
  for (int n = 0; n <= num.order; ++n) {
    WPoly acc = num.c[n];
    for (int i = 1; i <= n; ++i)
      acc = wp_sub(acc, wp_mul(den.c[i], g.c[n - i]));
    g.c[n] = acc;
  }
  return g;
}

}  // namespace pqtrace
