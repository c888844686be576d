#pragma once
// The tracial state as a computable linear map. A word trace reduces to
// one of the basis moments {1, p = tr(P), q = tr(Q), m_k = tr((PQ)^k)}:
// cyclic invariance wraps the last letter of an odd-length word around to
// the front, where idempotency absorbs it into the equal first letter, so
// every word containing both letters has the trace of (PQ)^k with
// k = min(#P, #Q).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "pqtrace/ncpoly.hpp"
#include "pqtrace/rational.hpp"
#include "pqtrace/word.hpp"

namespace pqtrace {

/// Exact linear combination over the trace basis. Zero coefficients are
/// pruned; equality is coefficient-wise.
struct MomentExpr {
  Rational unit{0};
  Rational p{0};
  Rational q{0};
  std::map<unsigned, Rational> m;  // k >= 1

  bool is_zero() const { return unit == 0 && p == 0 && q == 0 && m.empty(); }

  /// Largest k with a nonzero m_k coefficient (0 if none).
  unsigned max_k() const { return m.empty() ? 0 : m.rbegin()->first; }

  MomentExpr& operator+=(const MomentExpr& rhs) {
    unit += rhs.unit;
    p += rhs.p;
    q += rhs.q;
    for (const auto& [k, c] : rhs.m) add_m(k, c);
    return *this;
  }

  MomentExpr& operator-=(const MomentExpr& rhs) {
    unit -= rhs.unit;
    p -= rhs.p;
    q -= rhs.q;
    for (const auto& [k, c] : rhs.m) add_m(k, -c);
    return *this;
  }

  MomentExpr& operator*=(const Rational& s) {
    if (s == 0) {
      *this = MomentExpr{};
    } else {
      unit *= s;
      p *= s;
      q *= s;
      for (auto& [k, c] : m) c *= s;
    }
    return *this;
  }

  friend MomentExpr operator+(MomentExpr a, const MomentExpr& b) { return a += b; }
  friend MomentExpr operator-(MomentExpr a, const MomentExpr& b) { return a -= b; }
  friend MomentExpr operator*(MomentExpr a, const Rational& s) { return a *= s; }
  friend MomentExpr operator*(const Rational& s, MomentExpr a) { return a *= s; }
  friend MomentExpr operator-(const MomentExpr& a) { return Rational(-1) * a; }

  friend bool operator==(const MomentExpr& a, const MomentExpr& b) {
    return a.unit == b.unit && a.p == b.p && a.q == b.q && a.m == b.m;
  }
  friend bool operator!=(const MomentExpr& a, const MomentExpr& b) {
    return !(a == b);
  }

  /// Render in basis order, e.g. "1 - p - q + 2*m_1". Zero renders "0".
  std::string str() const {
    std::string out;
    bool first = true;
    const auto emit = [&](const Rational& c, const std::string& sym) {
      if (c == 0) return;
      const bool neg = c < 0;
      const Rational mag = neg ? Rational(-c) : c;
      if (first) {
        if (neg) out += "-";
        first = false;
      } else {
        out += neg ? " - " : " + ";
      }
      if (sym.empty()) {
        out += number_str(mag);
      } else if (mag == 1) {
        out += sym;
      } else {
        out += number_str(mag) + "*" + sym;
      }
    };
    emit(unit, "");
    emit(p, "p");
    emit(q, "q");
    for (const auto& [k, c] : m) emit(c, "m_" + std::to_string(k));
    return out.empty() ? "0" : out;
  }

  void add_m(unsigned k, const Rational& c) {
    if (c == 0) return;
    auto it = m.find(k);
    if (it == m.end()) {
      m.emplace(k, c);
    } else {
      it->second += c;
      if (it->second == 0) m.erase(it);
    }
  }
};

inline MomentExpr mom_one(const Rational& c = Rational(1)) {
  MomentExpr e;
  e.unit = c;
  return e;
}
inline MomentExpr mom_p(const Rational& c = Rational(1)) {
  MomentExpr e;
  e.p = c;
  return e;
}
inline MomentExpr mom_q(const Rational& c = Rational(1)) {
  MomentExpr e;
  e.q = c;
  return e;
}
inline MomentExpr mom_m(unsigned k, const Rational& c = Rational(1)) {
  MomentExpr e;
  e.add_m(k, c);
  return e;
}
/// alpha = tr(R) = 2p - 1.
inline MomentExpr mom_alpha() { return mom_p(Rational(2)) - mom_one(); }
/// beta = tr(S) = 2q - 1.
inline MomentExpr mom_beta() { return mom_q(Rational(2)) - mom_one(); }

/// Trace of a single normal-form word.
inline MomentExpr trace(const Word& w) {
  if (w.empty()) return mom_one();
  if (w.length() == 1)
    return w.first() == Letter::P ? mom_p() : mom_q();
  return mom_m(w.min_count());
}

/// Linear extension to polynomials.
inline MomentExpr trace(const NCPoly& x) {
  MomentExpr out;
  for (const auto& [w, c] : x) out += c * trace(w);
  return out;
}

/// Numeric values for the basis moments. m must cover every index the
/// evaluated expression touches.
struct Assignment {
  double p = 0.0;
  double q = 0.0;
  std::map<unsigned, double> m;
};

struct MissingMomentError : std::runtime_error {
  unsigned k;
  explicit MissingMomentError(unsigned k_)
      : std::runtime_error("assignment does not define m_" + std::to_string(k_)),
        k(k_) {}
};

/// Evaluate numerically; rationals are converted at the last step.
inline double eval(const MomentExpr& e, const Assignment& a) {
  double out = e.unit.convert_to<double>();
  out += e.p.convert_to<double>() * a.p;
  out += e.q.convert_to<double>() * a.q;
  for (const auto& [k, c] : e.m) {
    auto it = a.m.find(k);
    if (it == a.m.end()) throw MissingMomentError(k);
    out += c.convert_to<double>() * it->second;
  }
  return out;
}

/// True iff the two words have equal traces as exact expressions.
inline bool cyclic_equivalence_check(const Word& u, const Word& v) {
  return trace(u) == trace(v);
}

}  // namespace pqtrace
