#pragma once
// Normal form for words in two idempotent letters P, Q.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>

namespace pqtrace {

enum class Letter : std::uint8_t { P = 0, Q = 1 };

inline constexpr Letter other(Letter l) {
  return l == Letter::P ? Letter::Q : Letter::P;
}

inline constexpr char letter_char(Letter l) {
  return l == Letter::P ? 'P' : 'Q';
}

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg), position(pos) {}
};

/// A word in the monoid generated by P, Q modulo P^2 = P, Q^2 = Q.
///
/// Every element has a unique alternating representative, so the pair
/// (first letter, length) is a complete normal form. Length 0 is the
/// empty word, the unit of the monoid.
class Word {
 public:
  constexpr Word() = default;

  Word(Letter first, std::uint32_t length) : first_(first), len_(length) {
    if (len_ == 0) first_ = Letter::P;  // unit is unique
  }

  static constexpr Word unit() { return Word{}; }

  bool empty() const { return len_ == 0; }
  std::uint32_t length() const { return len_; }

  /// First letter; only meaningful for nonempty words.
  Letter first() const { return first_; }

  /// Last letter of the alternating string.
  Letter last() const { return (len_ % 2 == 1) ? first_ : other(first_); }

  /// Number of occurrences of a given letter.
  std::uint32_t count(Letter l) const {
    if (len_ == 0) return 0;
    return (l == first_) ? (len_ + 1) / 2 : len_ / 2;
  }

  /// min(#P, #Q); the trace of any two-letter word reduces to this index.
  std::uint32_t min_count() const { return len_ / 2; }

  /// Reversal (the *-operation on words; P and Q are self-adjoint).
  Word reversed() const { return empty() ? *this : Word(last(), len_); }

  std::string str() const {
    std::string out;
    out.reserve(len_);
    Letter l = first_;
    for (std::uint32_t i = 0; i < len_; ++i) {
      out.push_back(letter_char(l));
      l = other(l);
    }
    return out;
  }

  /// Normal form of an arbitrary string over {P, Q}: equal adjacent
  /// letters collapse. Empty input gives the unit.
  static Word parse(std::string_view text) {
    Word w;
    Letter last = Letter::P;
    for (std::size_t i = 0; i < text.size(); ++i) {
      Letter l;
      switch (text[i]) {
        case 'P': l = Letter::P; break;
        case 'Q': l = Letter::Q; break;
        default:
          throw ParseError("invalid character '" + std::string(1, text[i]) +
                               "' in word at position " + std::to_string(i),
                           i);
      }
      if (w.len_ == 0) {
        w.first_ = l;
        w.len_ = 1;
        last = l;
      } else if (l != last) {
        ++w.len_;
        last = l;
      }
    }
    return w;
  }

  friend bool operator==(const Word& a, const Word& b) {
    return a.len_ == b.len_ && a.first_ == b.first_;
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

  /// Canonical order: unit first, then by length, P before Q.
  friend bool operator<(const Word& a, const Word& b) {
    return std::tie(a.len_, a.first_) < std::tie(b.len_, b.first_);
  }

 private:
  Letter first_ = Letter::P;
  std::uint32_t len_ = 0;
};

/// Product in the quotient monoid: concatenation with at most one
/// collapse at the seam, so the result is again a single word.
inline Word word_mul(const Word& u, const Word& v) {
  if (u.empty()) return v;
  if (v.empty()) return u;
  const std::uint32_t len =
      u.length() + v.length() - (u.last() == v.first() ? 1 : 0);
  return Word(u.first(), len);
}

inline Word operator*(const Word& u, const Word& v) { return word_mul(u, v); }

inline Word parse_word(std::string_view text) { return Word::parse(text); }

}  // namespace pqtrace
