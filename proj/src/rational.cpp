#include "higgsnef/rational.hpp"

#include <cctype>

namespace higgsnef {

namespace {

bool is_signed_digits(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string strip_plus(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return std::string(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!is_signed_digits(num)) {
    throw Error("not a rational number: '" + std::string(text) + "'");
  }
  Rational q;
  if (slash == std::string_view::npos) {
    q = Rational(mpz_class(strip_plus(num)));
    return q;
  }
  const auto den = text.substr(slash + 1);
  if (den.empty() || !std::isdigit(static_cast<unsigned char>(den.front())) ||
      !is_signed_digits(den)) {
    throw Error("not a rational number: '" + std::string(text) + "'");
  }
  mpz_class d(std::string{den});
  if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  q = Rational(mpz_class(strip_plus(num)), d);
  q.canonicalize();
  return q;
}

}  // namespace higgsnef
