#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

namespace sofic {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: r is C(n-k+i, i) after this step
  }
  return r;
}

inline BigInt pow_int(const BigInt& base, unsigned exp) {
  BigInt r = 1, b = base;
  while (exp) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

// Number of injective partial self-maps of a d-point set:
// sum over domain size k of C(d,k)^2 k!.
inline BigInt partial_perm_count(unsigned d) {
  BigInt total = 0;
  for (unsigned k = 0; k <= d; ++k) total += binomial(d, k) * binomial(d, k) * factorial(k);
  return total;
}

// Natural log of a positive BigInt, via mantissa/exponent split.
inline double log_big(const BigInt& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  const auto bits = msb(v);  // boost: index of highest set bit
  if (bits <= 900) return std::log(v.convert_to<double>());
  const BigInt mant = v >> (bits - 52);
  return std::log(mant.convert_to<double>()) + static_cast<double>(bits - 52) * std::log(2.0);
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

}  // namespace sofic
