#include "cantor/dyadic.hpp"

#include <cctype>
#include <cmath>
#include <utility>

#include "cantor/errors.hpp"

namespace cantor {

namespace mp = boost::multiprecision;

Dyadic::Dyadic(BigInt numerator, std::uint32_t exponent) : num_(std::move(numerator)), exp_(exponent) {
  canonicalize();
}

void Dyadic::canonicalize() {
  if (num_.is_zero()) {
    exp_ = 0;
    return;
  }
  if (exp_ == 0) return;
  const bool negative = num_.sign() < 0;
  BigInt mag = negative ? BigInt(-num_) : num_;
  const auto tz = static_cast<std::uint32_t>(mp::lsb(mag));
  const std::uint32_t k = tz < exp_ ? tz : exp_;
  if (k > 0) {
    mag >>= k;
    exp_ -= k;
  }
  num_ = negative ? BigInt(-mag) : mag;
}

Dyadic Dyadic::operator-() const {
  Dyadic r = *this;
  r.num_ = -r.num_;
  return r;
}

Dyadic& Dyadic::operator+=(const Dyadic& o) {
  if (o.exp_ > exp_) {
    num_ <<= (o.exp_ - exp_);
    exp_ = o.exp_;
    num_ += o.num_;
  } else {
    num_ += o.num_ << (exp_ - o.exp_);
  }
  canonicalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& o) { return *this += -o; }

Dyadic& Dyadic::operator*=(const Dyadic& o) {
  num_ *= o.num_;
  exp_ += o.exp_;
  canonicalize();
  return *this;
}

Dyadic Dyadic::shifted(std::int64_t k) const {
  if (k >= 0) {
    const auto uk = static_cast<std::uint64_t>(k);
    if (uk <= exp_) return Dyadic(num_, exp_ - static_cast<std::uint32_t>(uk));
    return Dyadic(num_ << (uk - exp_), 0);
  }
  return Dyadic(num_, exp_ + static_cast<std::uint32_t>(-k));
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int c;
  if (a.exp_ == b.exp_) {
    c = a.num_.compare(b.num_);
  } else if (a.exp_ > b.exp_) {
    c = a.num_.compare(BigInt(b.num_ << (a.exp_ - b.exp_)));
  } else {
    c = BigInt(a.num_ << (b.exp_ - a.exp_)).compare(b.num_);
  }
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Dyadic Dyadic::divide_rounded(const Dyadic& a, std::uint64_t n, std::uint32_t precision) {
  if (n == 0) throw std::domain_error("divide_rounded: division by zero");
  const BigInt num = a.num_ << precision;
  const BigInt den = BigInt(n) << a.exp_;
  BigInt q = num / den;
  const BigInt r = num % den;
  BigInt twice = r << 1;
  if (twice.sign() < 0) twice = -twice;
  if (twice >= den) q += (num.sign() < 0 ? -1 : 1);
  return Dyadic(q, precision);
}

std::strong_ordering Dyadic::compare_rational(std::int64_t p, std::int64_t q) const {
  const BigInt lhs = num_ * q;
  const BigInt rhs = BigInt(p) << exp_;
  const int c = lhs.compare(rhs);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double Dyadic::to_double() const {
  return std::ldexp(num_.convert_to<double>(), -static_cast<int>(exp_));
}

std::string Dyadic::str() const { return num_.str() + "/2^" + std::to_string(exp_); }

Dyadic Dyadic::parse(std::string_view text) {
  auto fail = [&] { return ParseError("malformed dyadic '" + std::string(text) + "'", 1, 1, "num/2^exp"); };
  const auto slash = text.find('/');
  const std::string_view num_part = text.substr(0, slash);
  if (num_part.empty()) throw fail();
  for (std::size_t i = 0; i < num_part.size(); ++i) {
    const char c = num_part[i];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || (i == 0 && c == '-' && num_part.size() > 1))) throw fail();
  }
  BigInt num{std::string(num_part)};
  if (slash == std::string_view::npos) return Dyadic(num, 0);
  const std::string_view rest = text.substr(slash + 1);
  if (rest.size() < 3 || rest.substr(0, 2) != "2^") throw fail();
  std::uint64_t e = 0;
  for (char c : rest.substr(2)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw fail();
    e = e * 10 + static_cast<std::uint64_t>(c - '0');
    if (e > 0xffffffffu) throw fail();
  }
  return Dyadic(num, static_cast<std::uint32_t>(e));
}

Dyadic abs(const Dyadic& d) { return d.sign() < 0 ? -d : d; }
Dyadic min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
Dyadic max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

DyadicInterval::DyadicInterval(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {
  if (hi < lo) throw std::invalid_argument("DyadicInterval: lo > hi");
}

}  // namespace cantor
