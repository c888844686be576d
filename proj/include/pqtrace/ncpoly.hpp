#pragma once
// Noncommutative polynomials in two idempotent generators, with exact
// rational coefficients. Immutable value semantics throughout.

#include <cctype>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "pqtrace/rational.hpp"
#include "pqtrace/word.hpp"

namespace pqtrace {

/// Finite rational linear combination of normal-form words. Zero
/// coefficients are never stored; iteration order is canonical
/// (unit first, then by length, P before Q).
class NCPoly {
 public:
  using TermMap = std::map<Word, Rational>;
  using const_iterator = TermMap::const_iterator;

  NCPoly() = default;

  explicit NCPoly(const Rational& c) {
    if (c != 0) terms_[Word::unit()] = c;
  }

  explicit NCPoly(const Word& w, const Rational& c = Rational(1)) {
    if (c != 0) terms_[w] = c;
  }

  NCPoly(std::initializer_list<std::pair<Word, Rational>> init) {
    for (const auto& [w, c] : init) add_term(w, c);
  }

  static NCPoly zero() { return NCPoly(); }
  static NCPoly unit() { return NCPoly(Rational(1)); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }

  Rational coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  NCPoly& operator+=(const NCPoly& rhs) {
    for (const auto& [w, c] : rhs.terms_) add_term(w, c);
    return *this;
  }

  NCPoly& operator-=(const NCPoly& rhs) {
    for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
    return *this;
  }

  NCPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [w, c] : terms_) c *= s;
    }
    return *this;
  }

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, const Rational& s) { return a *= s; }
  friend NCPoly operator*(const Rational& s, NCPoly a) { return a *= s; }

  friend NCPoly operator-(const NCPoly& a) {
    NCPoly out;
    for (const auto& [w, c] : a.terms_) out.terms_[w] = -c;
    return out;
  }

  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    NCPoly out;
    for (const auto& [wu, cu] : a.terms_)
      for (const auto& [wv, cv] : b.terms_) out.add_term(wu * wv, cu * cv);
    return out;
  }

  friend bool operator==(const NCPoly& a, const NCPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const NCPoly& a, const NCPoly& b) {
    return !(a == b);
  }

  NCPoly pow(unsigned n) const {
    NCPoly out = unit();
    for (unsigned i = 0; i < n; ++i) out = out * (*this);
    return out;
  }

  /// The *-operation: reverse every word (coefficients are real).
  NCPoly adjoint() const {
    NCPoly out;
    for (const auto& [w, c] : terms_) out.add_term(w.reversed(), c);
    return out;
  }

  /// Render as a sum of `coeff*WORD` terms, `1` standing for the unit
  /// word, e.g. "-1 + 2*P". This is the format parse() accepts.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      const bool neg = c < 0;
      const Rational mag = neg ? Rational(-c) : c;
      if (first) {
        if (neg) out += "-";
        first = false;
      } else {
        out += neg ? " - " : " + ";
      }
      if (w.empty()) {
        out += number_str(mag);
      } else {
        out += number_str(mag);
        out += "*";
        out += w.str();
      }
    }
    return out;
  }

  /// Parse the term-sum format: signed `coeff*WORD` terms over the
  /// alphabet {P,Q}, `1` for the unit word, rational coefficients as
  /// "a" or "a/b". The coefficient and the '*' may be omitted.
  static NCPoly parse(std::string_view text);

 private:
  void add_term(const Word& w, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TermMap terms_;
};

inline NCPoly poly_add(const NCPoly& x, const NCPoly& y) { return x + y; }
inline NCPoly poly_scale(const Rational& s, const NCPoly& x) { return s * x; }
inline NCPoly poly_mul(const NCPoly& x, const NCPoly& y) { return x * y; }
inline NCPoly poly_pow(const NCPoly& x, unsigned n) { return x.pow(n); }

// Builders for the named elements of the algebra.

inline NCPoly proj_P() { return NCPoly(Word(Letter::P, 1)); }
inline NCPoly proj_Q() { return NCPoly(Word(Letter::Q, 1)); }

/// R = 2P - 1.
inline NCPoly sym_R() {
  return Rational(2) * proj_P() - NCPoly::unit();
}

/// S = 2Q - 1.
inline NCPoly sym_S() {
  return Rational(2) * proj_Q() - NCPoly::unit();
}

/// A = P - Q.
inline NCPoly kato_A() { return proj_P() - proj_Q(); }

/// B = 1 - (P + Q).
inline NCPoly kato_B() {
  return NCPoly::unit() - proj_P() - proj_Q();
}

/// D = PQ - QP, the commutator without the scalar i.
inline NCPoly comm_skew() {
  return NCPoly(Word(Letter::P, 2)) - NCPoly(Word(Letter::Q, 2));
}

inline NCPoly NCPoly::parse(std::string_view text) {
  NCPoly out;
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  const auto parse_uint = [&]() -> BigInt {
    std::size_t start = i;
    BigInt v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      ++i;
    }
    if (i == start) throw ParseError("expected digits at position " + std::to_string(i), i);
    return v;
  };

  skip_ws();
  if (i == text.size())
    throw ParseError("empty polynomial expression", 0);

  bool first_term = true;
  while (true) {
    skip_ws();
    int sign = 1;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      if (first_term && text[i] == '+')
        throw ParseError("unexpected leading '+' at position " + std::to_string(i), i);
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first_term) {
      throw ParseError("expected '+' or '-' at position " + std::to_string(i), i);
    }
    if (i >= text.size())
      throw ParseError("dangling sign at end of expression", i);

    Rational coeff(1);
    bool have_coeff = false;
    bool saw_star = false;
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      BigInt num = parse_uint();
      BigInt den = 1;
      if (i < text.size() && text[i] == '/') {
        ++i;
        den = parse_uint();
        if (den == 0)
          throw ParseError("zero denominator at position " + std::to_string(i), i);
      }
      coeff = Rational(num, den);
      have_coeff = true;
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
        saw_star = true;
        skip_ws();
      }
    }
    if (saw_star && (i >= text.size() || (text[i] != 'P' && text[i] != 'Q')))
      throw ParseError("expected word after '*' at position " + std::to_string(i), i);

    if (i < text.size() && (text[i] == 'P' || text[i] == 'Q')) {
      std::size_t start = i;
      while (i < text.size() && (text[i] == 'P' || text[i] == 'Q')) ++i;
      Word w = Word::parse(text.substr(start, i - start));
      out += NCPoly(w, sign > 0 ? coeff : Rational(-coeff));
    } else if (have_coeff) {
      // coefficient alone: a multiple of the unit word ("1" included)
      out += NCPoly(sign > 0 ? coeff : Rational(-coeff));
    } else {
      throw ParseError("expected coefficient or word at position " + std::to_string(i), i);
    }

    skip_ws();
    if (i == text.size()) break;
    first_term = false;
  }
  return out;
}

}  // namespace pqtrace
