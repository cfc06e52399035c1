#include "entrolab/time_bound.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace entrolab {

namespace {

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument("time bound: bad " + std::string(what) + " '" + std::string(text) +
                                "'");
  }
  return value;
}

}  // namespace

TimeBound TimeBound::constant(std::uint64_t steps) {
  TimeBound t;
  t.kind_ = Kind::kConstant;
  t.coefficient_ = steps;
  return t;
}

TimeBound TimeBound::poly(std::uint64_t coefficient, unsigned exponent) {
  TimeBound t;
  t.kind_ = Kind::kPoly;
  t.coefficient_ = coefficient;
  t.exponent_ = exponent;
  return t;
}

TimeBound TimeBound::parse(std::string_view text) {
  if (text.starts_with("const:")) return constant(parse_u64(text.substr(6), "constant"));
  if (text.starts_with("poly:")) {
    const auto body = text.substr(5);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument("time bound: expected poly:c,k");
    }
    const auto exponent = parse_u64(body.substr(comma + 1), "exponent");
    if (exponent > 64) throw std::invalid_argument("time bound: exponent too large");
    return poly(parse_u64(body.substr(0, comma), "coefficient"), static_cast<unsigned>(exponent));
  }
  throw std::invalid_argument("time bound: expected const:T or poly:c,k, got '" +
                              std::string(text) + "'");
}

std::uint64_t TimeBound::operator()(std::size_t length) const {
  if (kind_ == Kind::kConstant) return coefficient_;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t value = coefficient_;
  for (unsigned i = 0; i < exponent_; ++i) {
    if (length != 0 && value > kMax / length) return kMax;
    value *= length;
  }
  return value;
}

std::string TimeBound::to_string() const {
  if (kind_ == Kind::kConstant) return "const:" + std::to_string(coefficient_);
  return "poly:" + std::to_string(coefficient_) + "," + std::to_string(exponent_);
}

}  // namespace entrolab
