#pragma once

// Exact integer and rational carriers used by every formula in the library.

#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace rho {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Thrown when a caller passes a value outside an operation's domain.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a request would exceed a configured size cap (factorial growth).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when textual input cannot be parsed.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

BigInt factorial(int n);

/// Exact n!/m! for n >= m >= 0 (falling product m+1..n).
BigInt factorial_ratio(int n, int m);

BigInt pow_int(const BigInt& base, unsigned exponent);
BigRational pow_rational(const BigRational& base, unsigned exponent);

/// "p/q", or just "p" when the value is an integer.
std::string to_string(const BigRational& value);
std::string to_string(const BigInt& value);

/// Accepts "p", "-p", "p/q" with q != 0. Anything else throws ParseError.
BigRational parse_rational(std::string_view text);

double to_double(const BigRational& value);

}  // namespace rho
