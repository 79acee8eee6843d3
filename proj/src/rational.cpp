#include "grig/rational.hpp"

#include <stdexcept>

namespace grig {

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(num, den);
  }
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    BigInt num(digits);
    BigInt den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rational(num, den);
  }
  return Rational(BigInt(s));
}

std::string rational_str(const Rational& q) {
  std::string out = numerator(q).str();
  if (denominator(q) != 1) out += "/" + denominator(q).str();
  return out;
}

}  // namespace grig
