#include "cantor/ordinal.hpp"

#include <algorithm>
#include <cctype>

#include "cantor/errors.hpp"

namespace cantor {

Ordinal::Ordinal(std::uint64_t n) {
  if (n > 0) terms_.push_back({0, n});
}

Ordinal Ordinal::omega_power(std::uint32_t exponent, std::uint64_t coefficient) {
  Ordinal o;
  if (coefficient > 0) o.terms_.push_back({exponent, coefficient});
  return o;
}

Ordinal Ordinal::from_terms(const std::vector<Term>& terms) {
  Ordinal acc;
  for (const auto& t : terms) acc = acc + omega_power(t.exponent, t.coefficient);
  return acc;
}

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const std::uint32_t lead = b.terms_.front().exponent;
  Ordinal r;
  for (const auto& t : a.terms_) {
    if (t.exponent > lead) r.terms_.push_back(t);
  }
  auto it = std::find_if(a.terms_.begin(), a.terms_.end(), [&](const Ordinal::Term& t) { return t.exponent == lead; });
  std::uint64_t carry = it != a.terms_.end() ? it->coefficient : 0;
  bool first = true;
  for (const auto& t : b.terms_) {
    r.terms_.push_back({t.exponent, first ? t.coefficient + carry : t.coefficient});
    first = false;
  }
  return r;
}

Ordinal Ordinal::successor() const { return *this + Ordinal(1); }

Ordinal Ordinal::predecessor() const {
  if (!is_successor()) throw std::logic_error("predecessor of a non-successor ordinal");
  Ordinal r = *this;
  if (--r.terms_.back().coefficient == 0) r.terms_.pop_back();
  return r;
}

Ordinal Ordinal::fundamental(std::uint64_t n) const {
  if (!is_limit()) throw std::logic_error("fundamental sequence of a non-limit ordinal");
  Ordinal base = *this;
  const std::uint32_t e = base.terms_.back().exponent;
  if (--base.terms_.back().coefficient == 0) base.terms_.pop_back();
  return base + omega_power(e - 1, n + 1);
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (x.exponent != y.exponent) return x.exponent <=> y.exponent;
    if (x.coefficient != y.coefficient) return x.coefficient <=> y.coefficient;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::string Ordinal::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += '+';
    if (t.exponent == 0) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += 'w';
    if (t.exponent > 1) out += '^' + std::to_string(t.exponent);
    if (t.coefficient > 1) out += '*' + std::to_string(t.coefficient);
  }
  return out;
}

namespace {

class CnfReader {
 public:
  explicit CnfReader(std::string_view s) : s_(s) {}

  Ordinal read() {
    std::vector<Ordinal::Term> terms;
    terms.push_back(term());
    while (peek() == '+') {
      ++pos_;
      terms.push_back(term());
    }
    if (pos_ != s_.size()) fail("'+' or end of input");
    return Ordinal::from_terms(terms);
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const char* expected) const {
    throw ParseError("malformed ordinal '" + std::string(s_) + "'", 1, pos_ + 1, expected);
  }

  std::uint64_t nat() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("digit");
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + static_cast<std::uint64_t>(s_[pos_++] - '0');
    return v;
  }

  Ordinal::Term term() {
    if (peek() != 'w') return {0, nat()};
    ++pos_;
    std::uint64_t e = 1;
    std::uint64_t c = 1;
    if (peek() == '^') {
      ++pos_;
      e = nat();
    }
    if (peek() == '*') {
      ++pos_;
      c = nat();
    }
    return {static_cast<std::uint32_t>(e), c};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal Ordinal::parse(std::string_view text) { return CnfReader(text).read(); }

std::vector<Ordinal> parse_ordinal_list(std::string_view text) {
  std::vector<Ordinal> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(Ordinal::parse(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Ordinal> default_budget(const Ordinal& top, std::uint64_t max_coefficient) {
  std::vector<Ordinal> out;
  const std::uint32_t lead = top.leading_exponent();
  // Odometer over coefficient vectors (c_lead, ..., c_0) in [0, max_coefficient].
  std::vector<std::uint64_t> coef(lead + 1, 0);
  while (true) {
    std::vector<Ordinal::Term> terms;
    for (std::uint32_t i = 0; i <= lead; ++i) {
      const std::uint32_t e = lead - i;
      if (coef[i] > 0) terms.push_back({e, coef[i]});
    }
    Ordinal o = Ordinal::from_terms(terms);
    if (!o.is_zero() && o <= top) out.push_back(std::move(o));
    std::size_t k = coef.size();
    while (k > 0 && coef[k - 1] == max_coefficient) coef[--k] = 0;
    if (k == 0) break;
    ++coef[k - 1];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cantor
