#include "entrolab/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entrolab {

namespace {

// log2 of a positive big integer: keep the top 64 bits, shift the rest out.
double log2_big(const BigInt& v) {
  const auto bits = boost::multiprecision::msb(v) + 1;
  if (bits <= 64) return std::log2(static_cast<double>(v.convert_to<std::uint64_t>()));
  const auto shift = static_cast<unsigned>(bits - 64);
  const BigInt top = v >> shift;
  return std::log2(static_cast<double>(top.convert_to<std::uint64_t>())) + shift;
}

}  // namespace

double log2_of(const Rational& q) {
  if (q <= 0) throw std::domain_error("log2_of: non-positive rational");
  return log2_big(boost::multiprecision::numerator(q)) -
         log2_big(boost::multiprecision::denominator(q));
}

double to_double(const Rational& q) {
  if (q == 0) return 0.0;
  BigInt num = boost::multiprecision::abs(boost::multiprecision::numerator(q));
  BigInt den = boost::multiprecision::denominator(q);
  // Keep the top 64 bits of each side and restore the scale with ldexp.
  const auto num_shift = std::max<long>(0, static_cast<long>(boost::multiprecision::msb(num)) - 63);
  const auto den_shift = std::max<long>(0, static_cast<long>(boost::multiprecision::msb(den)) - 63);
  num >>= static_cast<unsigned>(num_shift);
  den >>= static_cast<unsigned>(den_shift);
  const double ratio = static_cast<double>(num.convert_to<std::uint64_t>()) /
                       static_cast<double>(den.convert_to<std::uint64_t>());
  const double magnitude = std::ldexp(ratio, static_cast<int>(num_shift - den_shift));
  return q < 0 ? -magnitude : magnitude;
}

std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

}  // namespace entrolab
