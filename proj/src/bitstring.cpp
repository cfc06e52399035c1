#include "entrolab/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace entrolab {

BitString::BitString(std::string_view text) {
  bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("BitString: invalid character '" + std::string(1, c) + "'");
    }
    bits_.push_back(c == '1' ? 1 : 0);
  }
}

BitString BitString::repeat(std::size_t count, bool bit) {
  BitString s;
  s.bits_.assign(count, bit ? 1 : 0);
  return s;
}

BitString BitString::from_word(std::uint64_t word, std::size_t length) {
  BitString s;
  s.bits_.resize(length);
  for (std::size_t i = 0; i < length; ++i) {
    s.bits_[length - 1 - i] = static_cast<std::uint8_t>((word >> i) & 1U);
  }
  return s;
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitString BitString::substr(std::size_t pos, std::size_t count) const {
  BitString s;
  if (pos >= bits_.size()) return s;
  const auto last = std::min(bits_.size(), pos + count);
  s.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                 bits_.begin() + static_cast<std::ptrdiff_t>(last));
  return s;
}

bool BitString::all(bool bit) const {
  const std::uint8_t want = bit ? 1 : 0;
  return std::all_of(bits_.begin(), bits_.end(), [want](std::uint8_t b) { return b == want; });
}

bool BitString::is_prefix_of(const BitString& other) const {
  return bits_.size() <= other.bits_.size() &&
         std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

std::uint64_t BitString::to_word() const {
  if (bits_.size() > 64) throw std::length_error("BitString::to_word: longer than 64 bits");
  std::uint64_t word = 0;
  for (auto b : bits_) word = (word << 1) | b;
  return word;
}

std::string BitString::to_string() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[i] = '1';
  }
  return out;
}

std::strong_ordering BitString::operator<=>(const BitString& other) const {
  if (auto c = bits_.size() <=> other.bits_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(bits_.begin(), bits_.end(), other.bits_.begin(),
                                                other.bits_.end());
}

std::size_t BitStringHash::operator()(const BitString& s) const {
  // FNV-1a over the bits, seeded with the length.
  std::uint64_t h = 1469598103934665603ULL ^ s.size();
  for (std::size_t i = 0; i < s.size(); ++i) {
    h ^= static_cast<std::uint64_t>(s[i]);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

std::vector<BitString> all_strings_of_length(std::size_t n) {
  if (n >= 32) throw std::length_error("all_strings_of_length: n too large");
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
    out.push_back(BitString::from_word(w, n));
  }
  return out;
}

}  // namespace entrolab
