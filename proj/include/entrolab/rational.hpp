#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace entrolab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 2^-e as an exact rational.
inline Rational dyadic(std::uint64_t numerator, unsigned exponent) {
  BigInt den = 1;
  den <<= exponent;
  return Rational(BigInt(numerator), den);
}

inline BigInt pow2(unsigned exponent) {
  BigInt v = 1;
  v <<= exponent;
  return v;
}

// log2 of a positive rational, accurate to double precision even when the
// numerator and denominator individually overflow a double.
double log2_of(const Rational& q);
double to_double(const Rational& q);

std::string to_string(const Rational& q);

}  // namespace entrolab
