#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace entrolab {

// A finite binary string. Ordered by length first, then lexicographically,
// so that iterating a sorted container walks Σ* in the usual enumeration
// order: "", "0", "1", "00", "01", ...
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::string_view text);

  static BitString repeat(std::size_t count, bool bit);
  // The low `length` bits of `word`, most significant first.
  static BitString from_word(std::uint64_t word, std::size_t length);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }

  void push_back(bool bit) { bits_.push_back(bit ? 1 : 0); }
  void append(const BitString& other);
  BitString substr(std::size_t pos, std::size_t count) const;

  bool all(bool bit) const;
  bool is_prefix_of(const BitString& other) const;
  // Value as an unsigned binary numeral, MSB first. Requires size() <= 64.
  std::uint64_t to_word() const;

  std::string to_string() const;

  bool operator==(const BitString&) const = default;
  std::strong_ordering operator<=>(const BitString& other) const;

 private:
  std::vector<std::uint8_t> bits_;
};

struct BitStringHash {
  std::size_t operator()(const BitString& s) const;
};

// Every string of length n in lexicographic order.
std::vector<BitString> all_strings_of_length(std::size_t n);

}  // namespace entrolab
