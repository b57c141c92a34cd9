#include "cantor/clopen.hpp"

#include <algorithm>
#include <set>

namespace cantor {

ClopenSet::ClopenSet(std::initializer_list<const char*> gens) {
  std::vector<Bits> v;
  v.reserve(gens.size());
  for (const char* g : gens) v.emplace_back(g);
  *this = prefix_free_normalize(v);
}

ClopenSet ClopenSet::full() { return ClopenSet(std::vector<Bits>{Bits()}); }

ClopenSet ClopenSet::cylinder(const Bits& p) { return ClopenSet(std::vector<Bits>{p}); }

std::size_t ClopenSet::max_length() const {
  std::size_t d = 0;
  for (const auto& g : gens_) d = std::max(d, g.size());
  return d;
}

bool ClopenSet::contains(const Point& x) const {
  // Generators are sorted, so a linear scan that reads each bit once per
  // generator is enough at the sizes we deal with.
  for (const auto& g : gens_) {
    bool match = true;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (x.bit(i) != g[i]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

bool ClopenSet::contains_cylinder(const Bits& p) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const Bits& g) { return g.is_prefix_of(p); });
}

bool ClopenSet::meets_cylinder(const Bits& p) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const Bits& g) { return g.comparable(p); });
}

ClopenSet ClopenSet::restrict_to(const Bits& p) const {
  std::vector<Bits> out;
  for (const auto& g : gens_) {
    if (g.is_prefix_of(p)) return full();
    if (p.is_prefix_of(g)) out.push_back(g.suffix_from(p.size()));
  }
  return ClopenSet(std::move(out));
}

ClopenSet ClopenSet::prefixed(const Bits& p) const {
  std::vector<Bits> out;
  out.reserve(gens_.size());
  for (const auto& g : gens_) out.push_back(p + g);
  return prefix_free_normalize(out);
}

ClopenSet prefix_free_normalize(std::span<const Bits> strings) {
  std::vector<Bits> sorted(strings.begin(), strings.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  // Prefix absorption: a prefix sorts immediately before its extensions.
  std::set<Bits> kept;
  const Bits* last = nullptr;
  std::vector<Bits> minimal;
  for (const auto& s : sorted) {
    if (last != nullptr && last->is_prefix_of(s)) continue;
    minimal.push_back(s);
    last = &minimal.back();
  }
  kept.insert(minimal.begin(), minimal.end());

  // Sibling merge, bubbling upward whenever a merge creates a parent.
  for (const auto& s : minimal) {
    Bits cur = s;
    while (!cur.empty() && kept.count(cur) != 0 && kept.count(cur.sibling()) != 0) {
      kept.erase(cur);
      kept.erase(cur.sibling());
      cur = cur.parent();
      kept.insert(cur);
    }
  }
  return ClopenSet(std::vector<Bits>(kept.begin(), kept.end()));
}

Dyadic mu_I(const ClopenSet& s) {
  std::size_t d = s.max_length();
  BigInt total = 0;
  for (const auto& g : s.generators()) total += BigInt(1) << (d - g.size());
  return Dyadic(total, static_cast<std::uint32_t>(d));
}

ClopenSet set_union(const ClopenSet& a, const ClopenSet& b) {
  std::vector<Bits> all = a.generators();
  all.insert(all.end(), b.generators().begin(), b.generators().end());
  return prefix_free_normalize(all);
}

ClopenSet set_union(std::span<const ClopenSet> sets) {
  std::vector<Bits> all;
  for (const auto& s : sets) all.insert(all.end(), s.generators().begin(), s.generators().end());
  return prefix_free_normalize(all);
}

ClopenSet set_intersection(const ClopenSet& a, const ClopenSet& b) {
  std::vector<Bits> out;
  for (const auto& p : a.generators()) {
    for (const auto& q : b.generators()) {
      if (p.is_prefix_of(q)) {
        out.push_back(q);
      } else if (q.is_prefix_of(p)) {
        out.push_back(p);
      }
    }
  }
  return prefix_free_normalize(out);
}

namespace {

// Complement of the generators in [lo, hi) relative to the cylinder [p]; all of
// them extend p and the range is sorted.
void complement_rec(const std::vector<Bits>& gens, std::size_t lo, std::size_t hi, const Bits& p,
                    std::vector<Bits>& out) {
  if (lo == hi) {
    out.push_back(p);
    return;
  }
  if (gens[lo].size() == p.size()) return;  // p itself is a generator
  const std::size_t depth = p.size();
  std::size_t mid = lo;
  while (mid < hi && !gens[mid][depth]) ++mid;
  complement_rec(gens, lo, mid, p.child(false), out);
  complement_rec(gens, mid, hi, p.child(true), out);
}

}  // namespace

ClopenSet set_complement(const ClopenSet& a) {
  std::vector<Bits> out;
  complement_rec(a.generators(), 0, a.generators().size(), Bits(), out);
  return prefix_free_normalize(out);
}

ClopenSet set_difference(const ClopenSet& a, const ClopenSet& b) {
  return set_intersection(a, set_complement(b));
}

bool is_subset(const ClopenSet& a, const ClopenSet& b) { return set_union(a, b) == b; }

}  // namespace cantor
