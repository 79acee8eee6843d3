#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace grig {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Parses "p", "p/q" or a decimal like "0.2".
Rational parse_rational(std::string_view text);

std::string rational_str(const Rational& q);

}  // namespace grig
