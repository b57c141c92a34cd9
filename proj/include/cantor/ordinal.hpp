#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cantor {

/// Ordinal below omega^omega in Cantor normal form.
///
/// Terms are (exponent, coefficient) with strictly decreasing exponents and
/// positive coefficients; the empty list is 0. Text form: "w^2*3+w+4", "0".
class Ordinal {
 public:
  struct Term {
    std::uint32_t exponent;
    std::uint64_t coefficient;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Ordinal() = default;
  Ordinal(std::uint64_t n);  // NOLINT(google-explicit-constructor)
  static Ordinal omega_power(std::uint32_t exponent, std::uint64_t coefficient = 1);
  /// Builds from terms in any order via ordinal addition, so the result is canonical.
  static Ordinal from_terms(const std::vector<Term>& terms);

  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == 0); }
  bool is_successor() const { return !terms_.empty() && terms_.back().exponent == 0; }
  bool is_limit() const { return !terms_.empty() && terms_.back().exponent > 0; }
  std::uint32_t leading_exponent() const { return terms_.empty() ? 0 : terms_.front().exponent; }
  /// Finite value; only meaningful when is_finite().
  std::uint64_t finite_value() const { return terms_.empty() ? 0 : terms_[0].coefficient; }

  Ordinal successor() const;
  /// Requires is_successor().
  Ordinal predecessor() const;
  /// n-th element of the standard fundamental sequence of a limit:
  /// (beta + w^(e)) [n] = beta + w^(e-1) * (n+1).
  Ordinal fundamental(std::uint64_t n) const;

  friend Ordinal operator+(const Ordinal& a, const Ordinal& b);

  friend bool operator==(const Ordinal&, const Ordinal&) = default;
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

  std::string str() const;
  static Ordinal parse(std::string_view text);

 private:
  std::vector<Term> terms_;
};

/// Parses a comma-separated list of CNF ordinals, returned sorted and deduplicated.
std::vector<Ordinal> parse_ordinal_list(std::string_view text);

/// All ordinals 1 <= b <= top whose exponents do not exceed top's leading
/// exponent and whose coefficients are at most max_coefficient, ascending.
std::vector<Ordinal> default_budget(const Ordinal& top, std::uint64_t max_coefficient = 3);

}  // namespace cantor
