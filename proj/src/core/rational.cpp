#include "core/rational.hpp"

#include "core/errors.hpp"

namespace levykit {

std::string rational_to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(BigInt(s));
    }
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    require(den != 0, ErrorCode::parse, "rational with zero denominator: " + s);
    return Rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorCode::parse, "malformed rational: " + s);
  }
}

Rational rational_factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

}  // namespace levykit
