#include "cantor/bits.hpp"

#include "cantor/errors.hpp"

namespace cantor {

Bits::Bits(std::string_view ascii) : s_(ascii) {
  for (std::size_t i = 0; i < s_.size(); ++i) {
    if (s_[i] != '0' && s_[i] != '1') {
      throw ParseError("invalid bit '" + std::string(1, s_[i]) + "'", 1, i + 1, "'0' or '1'");
    }
  }
}

Bits Bits::from_uint(std::uint64_t value, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1u) s[i] = '1';
  }
  return Bits(std::move(s), Trusted{});
}

Bits Bits::sibling() const {
  std::string s = s_;
  s.back() = s.back() == '0' ? '1' : '0';
  return Bits(std::move(s), Trusted{});
}

bool Bits::is_prefix_of(const Bits& other) const {
  return s_.size() <= other.s_.size() && other.s_.compare(0, s_.size(), s_) == 0;
}

}  // namespace cantor
