#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace homgrow {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& value) { return value.str(); }

inline BigInt pow_big(std::uint64_t base, std::uint64_t exponent) {
  return boost::multiprecision::pow(BigInt(base),
                                    static_cast<unsigned>(exponent));
}

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

/// Fixed-point decimal rendering of a rational, truncated toward zero.
std::string to_decimal(const Rational& value, int digits);

}  // namespace homgrow
