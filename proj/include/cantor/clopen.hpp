#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "cantor/bits.hpp"
#include "cantor/dyadic.hpp"
#include "cantor/point.hpp"

namespace cantor {

/// A clopen subset of Cantor space as a canonical prefix-free antichain.
///
/// Canonical means: no generator is a prefix of another, no two siblings p0, p1
/// are both present, and generators are sorted lexicographically. Two clopen
/// sets are equal iff their generator lists are equal.
class ClopenSet {
 public:
  ClopenSet() = default;
  ClopenSet(std::initializer_list<const char*> gens);

  static ClopenSet empty() { return {}; }
  static ClopenSet full();
  static ClopenSet cylinder(const Bits& p);

  const std::vector<Bits>& generators() const { return gens_; }
  bool is_empty() const { return gens_.empty(); }
  bool is_full() const { return gens_.size() == 1 && gens_[0].empty(); }

  /// Length of the longest generator; membership depends on at most this many bits.
  std::size_t max_length() const;

  bool contains(const Point& x) const;
  /// [p] is a subset of this set.
  bool contains_cylinder(const Bits& p) const;
  /// [p] meets this set.
  bool meets_cylinder(const Bits& p) const;

  /// { x : p x in this set }.
  ClopenSet restrict_to(const Bits& p) const;
  /// { p x : x in this set }.
  ClopenSet prefixed(const Bits& p) const;

  friend bool operator==(const ClopenSet&, const ClopenSet&) = default;

 private:
  friend ClopenSet prefix_free_normalize(std::span<const Bits> strings);
  explicit ClopenSet(std::vector<Bits> canonical) : gens_(std::move(canonical)) {}

  std::vector<Bits> gens_;
};

/// Canonical antichain denoting the union of the cylinders [s].
ClopenSet prefix_free_normalize(std::span<const Bits> strings);

/// Intensional measure: the sum of 2^-|p| over the generators.
Dyadic mu_I(const ClopenSet& s);

ClopenSet set_union(const ClopenSet& a, const ClopenSet& b);
ClopenSet set_union(std::span<const ClopenSet> sets);
ClopenSet set_intersection(const ClopenSet& a, const ClopenSet& b);
ClopenSet set_complement(const ClopenSet& a);
ClopenSet set_difference(const ClopenSet& a, const ClopenSet& b);
bool is_subset(const ClopenSet& a, const ClopenSet& b);

inline bool point_in(const Point& x, const ClopenSet& s) { return s.contains(x); }

}  // namespace cantor
