#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace entrolab {

// Step allowance as a function of output length: either a constant T or a
// polynomial c * n^k. Parsed from "const:T" or "poly:c,k".
class TimeBound {
 public:
  static TimeBound constant(std::uint64_t steps);
  static TimeBound poly(std::uint64_t coefficient, unsigned exponent);
  static TimeBound parse(std::string_view text);

  // Saturates at UINT64_MAX.
  std::uint64_t operator()(std::size_t length) const;

  std::string to_string() const;
  bool operator==(const TimeBound&) const = default;

 private:
  enum class Kind : std::uint8_t { kConstant, kPoly };
  Kind kind_ = Kind::kConstant;
  std::uint64_t coefficient_ = 0;
  unsigned exponent_ = 0;
};

}  // namespace entrolab
