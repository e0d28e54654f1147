#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace levykit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical wire form is "p/q" with q > 0; plain integers are accepted on
// input and mean p/1.
std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

Rational rational_factorial(unsigned n);

}  // namespace levykit
