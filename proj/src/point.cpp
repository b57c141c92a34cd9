#include "cantor/point.hpp"

#include <charconv>
#include <stdexcept>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class PeriodicImpl final : public Point::Impl {
 public:
  PeriodicImpl(Bits u, Bits v) : u_(std::move(u)), v_(std::move(v)) {}
  bool bit(std::uint64_t pos) const override {
    if (pos < u_.size()) return u_[pos];
    return v_[(pos - u_.size()) % v_.size()];
  }
  Point::Kind kind() const override { return Point::Kind::EventuallyPeriodic; }
  std::string describe() const override { return "u=" + u_.str() + ":v=" + v_.str(); }

 private:
  Bits u_;
  Bits v_;
};

class SeededImpl final : public Point::Impl {
 public:
  explicit SeededImpl(std::uint64_t seed) : seed_(seed) {}
  bool bit(std::uint64_t pos) const override {
    const std::uint64_t word = splitmix64(seed_ ^ splitmix64(pos >> 6));
    return ((word >> (pos & 63)) & 1u) != 0;
  }
  Point::Kind kind() const override { return Point::Kind::Seeded; }
  std::string describe() const override { return "seed=" + std::to_string(seed_); }

 private:
  std::uint64_t seed_;
};

class ColumnImpl final : public Point::Impl {
 public:
  ColumnImpl(std::shared_ptr<const Point::Impl> base, std::uint64_t k) : base_(std::move(base)), k_(k) {}
  bool bit(std::uint64_t pos) const override { return base_->bit(cantor_pair(k_, pos)); }
  Point::Kind kind() const override { return Point::Kind::Column; }
  std::string describe() const override { return "column(" + base_->describe() + "," + std::to_string(k_) + ")"; }

 private:
  std::shared_ptr<const Point::Impl> base_;
  std::uint64_t k_;
};

class TailImpl final : public Point::Impl {
 public:
  TailImpl(Bits p, std::shared_ptr<const Point::Impl> base) : p_(std::move(p)), base_(std::move(base)) {}
  bool bit(std::uint64_t pos) const override { return pos < p_.size() ? p_[pos] : base_->bit(pos - p_.size()); }
  Point::Kind kind() const override { return Point::Kind::TailAppend; }
  std::string describe() const override { return "tail(" + p_.str() + "," + base_->describe() + ")"; }

 private:
  Bits p_;
  std::shared_ptr<const Point::Impl> base_;
};

}  // namespace

Point Point::eventually_periodic(Bits u, Bits v) {
  if (v.empty()) throw ValidationError("eventually periodic point needs a nonempty period");
  return Point(std::make_shared<PeriodicImpl>(std::move(u), std::move(v)));
}

Point Point::seeded(std::uint64_t seed) { return Point(std::make_shared<SeededImpl>(seed)); }

Point Point::parse(std::string_view spec) {
  if (spec.starts_with("seed=")) {
    const std::string_view digits = spec.substr(5);
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      throw ParseError("bad seed in point '" + std::string(spec) + "'", 1, 6, "unsigned integer");
    }
    return seeded(seed);
  }
  if (spec.starts_with("u=")) {
    const auto colon = spec.find(":v=");
    if (colon == std::string_view::npos) throw ParseError("point spec missing ':v='", 1, spec.size() + 1, "':v='");
    return eventually_periodic(Bits(spec.substr(2, colon - 2)), Bits(spec.substr(colon + 3)));
  }
  throw ParseError("unknown point spec '" + std::string(spec) + "'", 1, 1, "'u=' or 'seed='");
}

Bits Point::prefix(std::size_t n) const {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    if (bit(i)) s[i] = '1';
  }
  return Bits(s);
}

Point column(const Point& x, std::uint64_t k) { return Point(std::make_shared<ColumnImpl>(x.impl_, k)); }

Point tail_append(const Bits& p, const Point& x) {
  if (p.empty()) return x;
  return Point(std::make_shared<TailImpl>(p, x.impl_));
}

}  // namespace cantor
