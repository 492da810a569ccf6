#include "rho/bigrational.hpp"

#include <cctype>

namespace rho {

BigInt factorial(int n) {
  if (n < 0) throw ArgumentError("factorial of a negative number");
  BigInt result = 1;
  for (int k = 2; k <= n; ++k) result *= k;
  return result;
}

BigInt factorial_ratio(int n, int m) {
  if (m < 0 || n < m) throw ArgumentError("factorial_ratio requires n >= m >= 0");
  BigInt result = 1;
  for (int k = m + 1; k <= n; ++k) result *= k;
  return result;
}

BigInt pow_int(const BigInt& base, unsigned exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    exponent >>= 1u;
    if (exponent) b *= b;
  }
  return result;
}

BigRational pow_rational(const BigRational& base, unsigned exponent) {
  return BigRational(pow_int(numerator(base), exponent),
                     pow_int(denominator(base), exponent));
}

std::string to_string(const BigInt& value) { return value.str(); }

std::string to_string(const BigRational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size())
    throw ParseError("malformed rational '" + std::string(whole) + "'");
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    const unsigned char c = static_cast<unsigned char>(text[pos]);
    if (!std::isdigit(c))
      throw ParseError("malformed rational '" + std::string(whole) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

BigRational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_integer(text, text));
  const BigInt num = parse_integer(text.substr(0, slash), text);
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
    throw ParseError("malformed rational '" + std::string(text) + "'");
  const BigInt den = parse_integer(den_text, text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return BigRational(num, den);
}

double to_double(const BigRational& value) { return value.convert_to<double>(); }

}  // namespace rho
