#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace higgsnef {

// All coefficients, slopes and pairings are exact rationals.
using Rational = mpq_class;

/// Bad input: invalid spec, out-of-range argument, malformed text.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cross-check between two computation routes disagreed.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Renders "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Accepts "p", "-p", "p/q". Throws Error on anything else.
Rational parse_rational(std::string_view text);

/// num/den in canonical form; den must be nonzero.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace higgsnef
