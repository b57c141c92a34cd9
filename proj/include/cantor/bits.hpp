#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace cantor {

/// A finite binary string; the empty string is the root cylinder.
///
/// Stored as ASCII '0'/'1' so that the lexicographic order of the storage is
/// the usual order on 2^<omega (a prefix sorts before its extensions).
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::string_view ascii);

  static Bits zeros(std::size_t n) { return Bits(std::string(n, '0'), Trusted{}); }
  static Bits ones(std::size_t n) { return Bits(std::string(n, '1'), Trusted{}); }
  /// Binary expansion of `value` in exactly `width` bits, most significant first.
  static Bits from_uint(std::uint64_t value, std::size_t width);

  std::size_t size() const { return s_.size(); }
  bool empty() const { return s_.empty(); }
  bool operator[](std::size_t i) const { return s_[i] == '1'; }

  const std::string& str() const { return s_; }

  Bits child(bool bit) const { return Bits(s_ + (bit ? '1' : '0'), Trusted{}); }
  Bits parent() const { return Bits(s_.substr(0, s_.size() - 1), Trusted{}); }
  Bits sibling() const;
  Bits prefix(std::size_t n) const { return Bits(s_.substr(0, n), Trusted{}); }
  Bits suffix_from(std::size_t n) const { return Bits(s_.substr(n), Trusted{}); }

  /// True when this string is an initial segment of `other` (not necessarily proper).
  bool is_prefix_of(const Bits& other) const;
  bool comparable(const Bits& other) const { return is_prefix_of(other) || other.is_prefix_of(*this); }

  friend Bits operator+(const Bits& a, const Bits& b) { return Bits(a.s_ + b.s_, Trusted{}); }
  Bits& operator+=(const Bits& b) {
    s_ += b.s_;
    return *this;
  }

  friend bool operator==(const Bits&, const Bits&) = default;
  friend std::strong_ordering operator<=>(const Bits& a, const Bits& b) { return a.s_ <=> b.s_; }

 private:
  struct Trusted {};
  Bits(std::string s, Trusted) : s_(std::move(s)) {}

  std::string s_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return std::hash<std::string>{}(b.str()); }
};

}  // namespace cantor
