#include "klazar/bigint.hpp"

#include <cmath>

#include "klazar/error.hpp"

namespace klazar {

double log_bigint(const BigInt& value) {
  if (value <= 0) throw domain_error("log of a non-positive count");
  const double direct = value.convert_to<double>();
  if (std::isfinite(direct)) return std::log(direct);
  // Too large for double: peel off the magnitude via the bit length.
  const unsigned bits = boost::multiprecision::msb(value);
  const unsigned keep = 512;
  const BigInt shifted = value >> (bits > keep ? bits - keep : 0);
  const double head = shifted.convert_to<double>();
  const double dropped = bits > keep ? static_cast<double>(bits - keep) : 0.0;
  return std::log(head) + dropped * std::log(2.0);
}

std::string to_decimal(const BigInt& value) { return value.str(); }

BigInt factorial(int n) {
  if (n < 0) throw domain_error("factorial of a negative number");
  BigInt out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

BigInt pow_bigint(const BigInt& base, int exponent) {
  if (exponent < 0) throw domain_error("negative exponent");
  BigInt out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace klazar
