#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "efc/error.hpp"

namespace efc {

// GMP keeps mpq_class canonical (reduced, positive denominator) after every
// arithmetic operation; only raw string construction needs canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Accepts "p" or "p/q" with an optional leading minus; q must be positive.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (digits == 0) throw SyntaxError(i, "integer");
  if (i < s.size()) {
    if (s[i] != '/') throw SyntaxError(i, "'/' or end of rational");
    ++i;
    std::size_t den_digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++den_digits;
    if (den_digits == 0) throw SyntaxError(i, "positive integer");
    if (i < s.size()) throw SyntaxError(i, "end of rational");
    if (s.find_first_not_of('0', i - den_digits) == std::string::npos)
      throw SyntaxError(i - den_digits, "positive integer");
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational q(s, 10);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace efc
