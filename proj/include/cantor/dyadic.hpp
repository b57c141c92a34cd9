#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace cantor {

using BigInt = boost::multiprecision::cpp_int;

/// Exact dyadic rational numerator / 2^exponent.
///
/// Always canonical: the numerator is odd or the exponent is zero. There is no
/// rounding anywhere in the arithmetic; division is only offered by powers of
/// two, plus an explicit rounded division used by the sampler.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Dyadic(BigInt numerator, std::uint32_t exponent);

  /// 2^-n.
  static Dyadic pow2_neg(std::uint32_t n) { return Dyadic(BigInt(1), n); }

  const BigInt& numerator() const { return num_; }
  std::uint32_t exponent() const { return exp_; }

  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }

  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& o);
  Dyadic& operator-=(const Dyadic& o);
  Dyadic& operator*=(const Dyadic& o);

  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }

  /// Multiply by 2^k (k may be negative).
  Dyadic shifted(std::int64_t k) const;

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  /// a / n rounded to the nearest multiple of 2^-precision (ties away from
  /// zero); exact whenever a / n is itself a dyadic with exponent <= precision.
  static Dyadic divide_rounded(const Dyadic& a, std::uint64_t n, std::uint32_t precision);

  /// Compare against the rational p/q (q > 0) exactly.
  std::strong_ordering compare_rational(std::int64_t p, std::int64_t q) const;

  double to_double() const;

  /// "num/2^exp", the wire form.
  std::string str() const;
  static Dyadic parse(std::string_view text);

 private:
  void canonicalize();

  BigInt num_{0};
  std::uint32_t exp_{0};
};

Dyadic abs(const Dyadic& d);
Dyadic min(const Dyadic& a, const Dyadic& b);
Dyadic max(const Dyadic& a, const Dyadic& b);

/// Closed interval [lo, hi] of dyadics.
struct DyadicInterval {
  Dyadic lo;
  Dyadic hi;

  DyadicInterval() = default;
  DyadicInterval(Dyadic l, Dyadic h);

  bool contains(const Dyadic& x) const { return lo <= x && x <= hi; }
  bool overlaps(const DyadicInterval& o) const { return lo <= o.hi && o.lo <= hi; }
  Dyadic width() const { return hi - lo; }
};

}  // namespace cantor
