#pragma once
// Exact arithmetic backend: arbitrary-precision integers and rationals.

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace pqtrace {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Row n of Pascal's triangle as exact integers.
inline std::vector<BigInt> binomial_row(unsigned n) {
  std::vector<BigInt> row{BigInt(1)};
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<BigInt> next(i + 1, BigInt(1));
    for (unsigned j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return BigInt(0);
  return binomial_row(n)[k];
}

inline BigInt pow2(unsigned e) { return BigInt(1) << e; }

/// Canonical decimal rendering, "num/den" when den != 1.
template <typename Number>
std::string number_str(const Number& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace pqtrace
