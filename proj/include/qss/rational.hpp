#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace qss {

/// Exact rational backed by GMP; always kept canonical.
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" with q > 0, including "/1" for integers.
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed text or a
/// zero denominator.
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  auto parse_int = [](std::string_view part) {
    std::string s(part);
    if (s.empty()) throw std::invalid_argument("empty integer in rational");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("malformed rational: " + s);
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed rational: " + s);
    }
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in rational");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace qss
