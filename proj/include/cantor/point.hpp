#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "cantor/bits.hpp"

namespace cantor {

/// Cantor pairing (k+n)(k+n+1)/2 + k, so that pair(1, 0) = 2.
constexpr std::uint64_t cantor_pair(std::uint64_t k, std::uint64_t n) {
  return (k + n) * (k + n + 1) / 2 + k;
}

/// An infinite bit stream with total, deterministic bit access.
///
/// Two base realizations exist: eventually periodic u v v v ... and a seeded
/// pseudo-random stream whose bit at a position is a pure function of
/// (seed, position). Column and tail views are built lazily on top of either.
/// Points are immutable and cheap to copy.
class Point {
 public:
  enum class Kind { EventuallyPeriodic, Seeded, Column, TailAppend };

  struct Impl {
    virtual ~Impl() = default;
    virtual bool bit(std::uint64_t pos) const = 0;
    virtual Kind kind() const = 0;
    virtual std::string describe() const = 0;
  };

  static Point eventually_periodic(Bits u, Bits v);
  static Point seeded(std::uint64_t seed);
  static Point zeros() { return eventually_periodic(Bits(), Bits("0")); }
  /// The point p 0 0 0 ..., used to enumerate cylinders of a given depth.
  static Point padded(const Bits& p) { return eventually_periodic(p, Bits("0")); }

  /// Accepts "u=<bits>:v=<bits>" or "seed=<int>".
  static Point parse(std::string_view spec);

  bool bit(std::uint64_t pos) const { return impl_->bit(pos); }
  bool operator()(std::uint64_t pos) const { return impl_->bit(pos); }
  Bits prefix(std::size_t n) const;

  Kind kind() const { return impl_->kind(); }
  std::string describe() const { return impl_->describe(); }

 private:
  explicit Point(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  friend Point column(const Point& x, std::uint64_t k);
  friend Point tail_append(const Bits& p, const Point& x);

  std::shared_ptr<const Impl> impl_;
};

/// The k-th column: n -> x(cantor_pair(k, n)).
Point column(const Point& x, std::uint64_t k);

/// p followed by the bits of x.
Point tail_append(const Bits& p, const Point& x);

}  // namespace cantor
