#include "cantor/decorate.hpp"

#include <map>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

NodeKind opposite(NodeKind k) { return k == NodeKind::Union ? NodeKind::Intersection : NodeKind::Union; }

Ordinal step_down(const Ordinal& b, std::uint64_t n) { return b.is_limit() ? b.fundamental(n) : b.predecessor(); }

}  // namespace

Code chain_code(const Ordinal& b, const ClopenSet& label, NodeKind root) {
  if (b.is_zero()) throw ValidationError("ranks start at 1");
  if (b == Ordinal(1)) return Code::leaf(label, Ordinal(1));
  Code child = chain_code(step_down(b, 0), label, opposite(root));
  return Code::node(root, {{0, std::move(child)}}, b);
}

Code empty_set_code(const Ordinal& b, NodeKind root) {
  if (b.is_zero()) throw ValidationError("ranks start at 1");
  if (b == Ordinal(1)) return Code::leaf(ClopenSet::empty(), Ordinal(1));
  std::vector<CodeChild> children;
  const std::size_t count = b.is_limit() ? 2 : 1;
  for (std::size_t i = 0; i < count; ++i) children.push_back({i, empty_set_code(step_down(b, i), opposite(root))});
  return Code::node(root, std::move(children), b);
}

DecorationGenerator empty_generator() {
  return DecorationGenerator("empty", [](const Ordinal& b, std::size_t) {
    Code e = empty_set_code(b, NodeKind::Intersection);
    return DecorationPair{e, e};
  });
}

DecorationGenerator split_generator(std::vector<ClopenSet> targets) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (mu_I(targets[i]) > Dyadic::pow2_neg(static_cast<std::uint32_t>(i))) {
      throw ValidationError("split target " + std::to_string(i) + " has measure " + mu_I(targets[i]).str() +
                            " > 1/2^" + std::to_string(i));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!set_intersection(targets[i], targets[j]).is_empty()) {
        throw ValidationError("split targets " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
      }
    }
  }
  auto shared = std::make_shared<const std::vector<ClopenSet>>(std::move(targets));
  return DecorationGenerator("split", [shared](const Ordinal& b, std::size_t b_hat) {
    if (b_hat >= shared->size() || (*shared)[b_hat].is_empty()) {
      Code e = empty_set_code(b, NodeKind::Intersection);
      return DecorationPair{e, e};
    }
    std::vector<Bits> lo;
    std::vector<Bits> hi;
    for (const auto& g : (*shared)[b_hat].generators()) {
      lo.push_back(g.child(false));
      hi.push_back(g.child(true));
    }
    return DecorationPair{chain_code(b, prefix_free_normalize(lo), NodeKind::Intersection),
                          chain_code(b, prefix_free_normalize(hi), NodeKind::Intersection)};
  });
}

void validate_generator_output(const DecorationPair& pair, const Ordinal& b) {
  for (const Code* c : {&pair.p, &pair.n}) {
    const char* which = c == &pair.p ? "P" : "N";
    auto fail = [&](const std::string& why) {
      throw ValidationError(std::string("generator output ") + which + "_b for b = " + b.str() + " " + why);
    };
    if (!is_complement_free(*c)) fail("contains a complement");
    if (!is_alternating(*c)) fail("is not alternating");
    if (c->kind() != NodeKind::Intersection && !c->is_leaf()) fail("has a union at the root");
    bool ranked = false;
    try {
      ranked = check_rank(*c);
    } catch (const ValidationError& e) {
      fail(std::string("is not fully ranked: ") + e.what());
    }
    if (!ranked) fail("breaks the rank laws");
    if (*c->rank() != b) fail("has root rank " + c->rank()->str());
  }
}

namespace {

class Decorator {
 public:
  Decorator(const DecorationGenerator& h, const std::vector<Ordinal>& budget) : h_(h), budget_(budget) {}

  Code run(const Code& c) {
    if (auto it = memo_.find(c.id()); it != memo_.end()) return it->second;
    Code out = c;
    if (!c.is_leaf()) {
      std::vector<CodeChild> children;
      for (const auto& ch : c.children()) children.push_back({2 * ch.index, run(ch.code)});
      for (std::size_t b_hat = 0; b_hat < budget_.size(); ++b_hat) {
        if (!(budget_[b_hat] < *c.rank())) continue;
        children.push_back({2 * b_hat + 1, run(side(b_hat, c.kind()))});
      }
      out = Code::node(c.kind(), std::move(children), c.rank());
    }
    memo_.emplace(c.id(), out);
    return out;
  }

 private:
  const Code& side(std::size_t b_hat, NodeKind kind) {
    auto key = std::make_pair(b_hat, kind == NodeKind::Union);
    if (auto it = sides_.find(key); it != sides_.end()) return it->second;
    if (!pairs_.count(b_hat)) {
      DecorationPair pair = h_(budget_[b_hat], b_hat);
      validate_generator_output(pair, budget_[b_hat]);
      pairs_.emplace(b_hat, std::move(pair));
    }
    const DecorationPair& pair = pairs_.at(b_hat);
    Code q = kind == NodeKind::Union ? pair.p : normalize_demorgan(Code::complement(pair.n));
    return sides_.emplace(key, std::move(q)).first->second;
  }

  const DecorationGenerator& h_;
  const std::vector<Ordinal>& budget_;
  std::unordered_map<const Node*, Code> memo_;
  std::map<std::size_t, DecorationPair> pairs_;
  std::map<std::pair<std::size_t, bool>, Code> sides_;
};

}  // namespace

Code decorate(const Code& t, const DecorationGenerator& h, const std::vector<Ordinal>& budget) {
  if (!is_complement_free(t)) throw ValidationError("decorate needs a complement-free code");
  if (!is_alternating(t)) throw ValidationError("decorate needs an alternating code");
  if (!check_rank(t)) throw ValidationError("decorate needs a code satisfying the rank laws");
  Decorator d(h, budget);
  return d.run(t);
}

Code decorate(const Code& t, const DecorationGenerator& h) {
  if (!t.rank()) throw ValidationError("decorate needs a ranked code");
  return decorate(t, h, default_budget(*t.rank()));
}

bool evaluation_map_unique(const Code& c, const Point& x) {
  const EvalMap map = evaluate(c, x);
  if (!satisfies_clauses(c, x, map)) return false;
  std::unordered_set<const Node*> seen;
  std::vector<Code> stack{c};
  while (!stack.empty()) {
    Code cur = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(cur.id()).second) continue;
    if (member(cur, x) != map.value(cur.id())) return false;
    for (const auto& ch : cur.children()) stack.push_back(ch.code);
  }
  return true;
}

PreservationReport check_preservation(const Code& t, const DecorationGenerator& h, const std::vector<Ordinal>& budget,
                                      const std::vector<Point>& points) {
  PreservationReport report;
  const Code decorated = decorate(t, h, budget);
  std::vector<DecorationPair> pairs;
  for (std::size_t b_hat = 0; b_hat < budget.size(); ++b_hat) pairs.push_back(h(budget[b_hat], b_hat));
  for (const auto& x : points) {
    ++report.points;
    bool inside = false;
    for (const auto& pair : pairs) inside = inside || member(pair.p, x) || member(pair.n, x);
    if (!inside) {
      ++report.outside;
      if (member(decorated, x) == member(t, x)) {
        ++report.preserved;
      } else {
        report.failures.push_back("membership changed at " + x.describe());
      }
      continue;
    }
    ++report.inside;
    if (evaluation_map_unique(decorated, x)) {
      ++report.unique_maps;
    } else {
      report.failures.push_back("evaluation map not unique at " + x.describe());
    }
  }
  return report;
}

}  // namespace cantor
