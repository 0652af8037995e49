#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace klazar {

/// Counts can exceed 64 bits (Bell numbers, n!^k products), so every counting
/// engine reports an arbitrary-precision integer.
using BigInt = boost::multiprecision::cpp_int;

/// Natural logarithm of a positive BigInt, exact enough for exponent tables.
double log_bigint(const BigInt& value);

/// Decimal string; the JSON layer serializes counts this way.
std::string to_decimal(const BigInt& value);

BigInt factorial(int n);
BigInt pow_bigint(const BigInt& base, int exponent);

}  // namespace klazar
