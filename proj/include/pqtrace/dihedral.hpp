#pragma once
// Group algebra of the group generated by two abstract involutions R, S
// (the infinite dihedral group). Elements normalize to (RS)^k or
// (RS)^k.R with a signed exponent, so equality is a two-field compare.

#include <cstdint>
#include <map>
#include <string>
#include <tuple>

#include "pqtrace/ncpoly.hpp"
#include "pqtrace/rational.hpp"

namespace pqtrace {

/// (RS)^k when reflection is false, (RS)^k * R when true.
struct DihedralElem {
  bool reflection = false;
  long k = 0;

  static constexpr DihedralElem unit() { return {false, 0}; }
  static constexpr DihedralElem R() { return {true, 0}; }
  static constexpr DihedralElem S() { return {true, -1}; }  // S = (RS)^{-1} R

  friend bool operator==(const DihedralElem& a, const DihedralElem& b) {
    return a.reflection == b.reflection && a.k == b.k;
  }
  friend bool operator!=(const DihedralElem& a, const DihedralElem& b) {
    return !(a == b);
  }
  friend bool operator<(const DihedralElem& a, const DihedralElem& b) {
    return std::tie(a.reflection, a.k) < std::tie(b.reflection, b.k);
  }

  std::string str() const {
    if (!reflection && k == 0) return "1";
    if (reflection && k == 0) return "R";
    const std::string rot = "(RS)^" + std::to_string(k);
    return reflection ? rot + ".R" : rot;
  }
};

/// Group law. With t = RS the relations R^2 = S^2 = 1 give t R = R t^{-1},
/// so (t^a R^e)(t^b R^f) = t^{a + (-1)^e b} R^{e xor f}.
inline DihedralElem dgroup_mul(const DihedralElem& x, const DihedralElem& y) {
  DihedralElem out;
  out.reflection = x.reflection != y.reflection;
  out.k = x.reflection ? x.k - y.k : x.k + y.k;
  return out;
}

inline DihedralElem operator*(const DihedralElem& x, const DihedralElem& y) {
  return dgroup_mul(x, y);
}

/// Rational group-algebra element; no zero coefficients stored.
class DihedralPoly {
 public:
  using TermMap = std::map<DihedralElem, Rational>;
  using const_iterator = TermMap::const_iterator;

  DihedralPoly() = default;
  explicit DihedralPoly(const DihedralElem& g, const Rational& c = Rational(1)) {
    if (c != 0) terms_[g] = c;
  }

  static DihedralPoly unit() { return DihedralPoly(DihedralElem::unit()); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }

  Rational coeff(const DihedralElem& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  DihedralPoly& operator+=(const DihedralPoly& rhs) {
    for (const auto& [g, c] : rhs.terms_) add_term(g, c);
    return *this;
  }
  DihedralPoly& operator-=(const DihedralPoly& rhs) {
    for (const auto& [g, c] : rhs.terms_) add_term(g, -c);
    return *this;
  }
  DihedralPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [g, c] : terms_) c *= s;
    }
    return *this;
  }

  friend DihedralPoly operator+(DihedralPoly a, const DihedralPoly& b) { return a += b; }
  friend DihedralPoly operator-(DihedralPoly a, const DihedralPoly& b) { return a -= b; }
  friend DihedralPoly operator*(DihedralPoly a, const Rational& s) { return a *= s; }
  friend DihedralPoly operator*(const Rational& s, DihedralPoly a) { return a *= s; }

  friend DihedralPoly operator*(const DihedralPoly& a, const DihedralPoly& b) {
    DihedralPoly out;
    for (const auto& [gu, cu] : a.terms_)
      for (const auto& [gv, cv] : b.terms_) out.add_term(gu * gv, cu * cv);
    return out;
  }

  friend bool operator==(const DihedralPoly& a, const DihedralPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const DihedralPoly& a, const DihedralPoly& b) {
    return !(a == b);
  }

  DihedralPoly pow(unsigned n) const {
    DihedralPoly out = unit();
    for (unsigned i = 0; i < n; ++i) out = out * (*this);
    return out;
  }

  /// True iff every term is a reflection (odd group length).
  bool reflections_only() const {
    for (const auto& [g, c] : terms_)
      if (!g.reflection) return false;
    return true;
  }

  /// Sum of all coefficients (image under the trivial character).
  Rational coefficient_mass() const {
    Rational s(0);
    for (const auto& [g, c] : terms_) s += c;
    return s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [g, c] : terms_) {
      const bool neg = c < 0;
      const Rational mag = neg ? Rational(-c) : c;
      if (first) {
        if (neg) out += "-";
        first = false;
      } else {
        out += neg ? " - " : " + ";
      }
      if (g == DihedralElem::unit()) {
        out += number_str(mag);
      } else if (mag == 1) {
        out += g.str();
      } else {
        out += number_str(mag) + "*" + g.str();
      }
    }
    return out;
  }

 private:
  void add_term(const DihedralElem& g, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(g);
    if (it == terms_.end()) {
      terms_.emplace(g, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TermMap terms_;
};

inline DihedralPoly dihedral_R_plus_S() {
  return DihedralPoly(DihedralElem::R()) + DihedralPoly(DihedralElem::S());
}

/// (R+S)^{2n} by raw group-algebra power.
inline DihedralPoly binomial_expand(unsigned n) {
  return dihedral_R_plus_S().pow(2 * n);
}

/// The closed form the raw power must equal:
/// C(2n,n)*1 + sum_{k=1}^{n} C(2n,n-k) ((RS)^k + (SR)^k).
inline DihedralPoly binomial_closed_form(unsigned n) {
  const auto row = binomial_row(2 * n);
  DihedralPoly out(DihedralElem::unit(), Rational(row[n]));
  for (unsigned k = 1; k <= n; ++k) {
    const Rational c{row[n - k]};
    out += DihedralPoly(DihedralElem{false, static_cast<long>(k)}, c);
    out += DihedralPoly(DihedralElem{false, -static_cast<long>(k)}, c);
  }
  return out;
}

/// (R+S)^{2n+1}; every term is a reflection.
inline DihedralPoly odd_expand(unsigned n) {
  return dihedral_R_plus_S().pow(2 * n + 1);
}

/// Substitute R = 2P-1, S = 2Q-1. An algebra homomorphism into the
/// projection algebra; injective on the group algebra.
inline NCPoly to_projection_poly(const DihedralElem& g) {
  const NCPoly rs = sym_R() * sym_S();
  const NCPoly sr = sym_S() * sym_R();
  NCPoly out =
      g.k >= 0 ? rs.pow(static_cast<unsigned>(g.k)) : sr.pow(static_cast<unsigned>(-g.k));
  if (g.reflection) out = out * sym_R();
  return out;
}

inline NCPoly to_projection_poly(const DihedralPoly& x) {
  NCPoly out;
  for (const auto& [g, c] : x) out += c * to_projection_poly(g);
  return out;
}

}  // namespace pqtrace
