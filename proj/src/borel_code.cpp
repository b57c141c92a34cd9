#include "cantor/borel_code.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>
#include <unordered_set>

#include "cantor/errors.hpp"

namespace cantor {

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Leaf:
      return "leaf";
    case NodeKind::Union:
      return "union";
    case NodeKind::Intersection:
      return "inter";
    case NodeKind::Complement:
      return "compl";
  }
  return "?";
}

std::string address_str(const Address& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) s += '.';
    s += std::to_string(a[i]);
  }
  return s;
}

Address parse_address(std::string_view s) {
  Address a;
  if (s.empty()) return a;
  std::size_t start = 0;
  while (true) {
    const auto dot = s.find('.', start);
    const auto piece = s.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc() || ptr != piece.data() + piece.size() || piece.empty()) {
      throw ParseError("bad address '" + std::string(s) + "'", 1, start + 1, "child index");
    }
    a.push_back(v);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return a;
}

// ---------------------------------------------------------------------------

Code::Code() : node_(std::make_shared<const Node>()) {}

Code Code::leaf(ClopenSet label, std::optional<Ordinal> rank) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Leaf;
  n->label = std::move(label);
  n->rank = std::move(rank);
  return Code(std::move(n));
}

namespace {

std::vector<CodeChild> dense(std::vector<Code> children) {
  std::vector<CodeChild> out;
  out.reserve(children.size());
  for (std::size_t i = 0; i < children.size(); ++i) out.push_back({i, std::move(children[i])});
  return out;
}

}  // namespace

Code Code::union_of(std::vector<Code> children) { return node(NodeKind::Union, dense(std::move(children))); }

Code Code::inter_of(std::vector<Code> children) {
  return node(NodeKind::Intersection, dense(std::move(children)));
}

Code Code::complement(Code child) { return node(NodeKind::Complement, dense({std::move(child)})); }

Code Code::node(NodeKind kind, std::vector<CodeChild> children, std::optional<Ordinal> rank) {
  if (kind == NodeKind::Leaf) throw std::invalid_argument("Code::node: use Code::leaf for leaves");
  if (kind == NodeKind::Complement && children.size() != 1) {
    throw std::invalid_argument("Code::node: complement takes exactly one child");
  }
  std::sort(children.begin(), children.end(), [](const CodeChild& a, const CodeChild& b) { return a.index < b.index; });
  for (std::size_t i = 1; i < children.size(); ++i) {
    if (children[i].index == children[i - 1].index) throw std::invalid_argument("Code::node: duplicate child index");
  }
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = std::move(children);
  n->rank = std::move(rank);
  return Code(std::move(n));
}

Code Code::big_union(std::size_t lo, std::size_t hi, const std::function<Code(std::size_t)>& rule) {
  std::vector<Code> ch;
  for (std::size_t n = lo; n <= hi && hi >= lo; ++n) ch.push_back(rule(n));
  return union_of(std::move(ch));
}

Code Code::big_inter(std::size_t lo, std::size_t hi, const std::function<Code(std::size_t)>& rule) {
  std::vector<Code> ch;
  for (std::size_t n = lo; n <= hi && hi >= lo; ++n) ch.push_back(rule(n));
  return inter_of(std::move(ch));
}

NodeKind Code::kind() const { return node_->kind; }
const ClopenSet& Code::label() const { return node_->label; }
const std::vector<CodeChild>& Code::children() const { return node_->children; }
const std::optional<Ordinal>& Code::rank() const { return node_->rank; }

Code Code::with_rank(std::optional<Ordinal> r) const {
  auto n = std::make_shared<Node>(*node_);
  n->rank = std::move(r);
  return Code(std::move(n));
}

const Code* Code::child_with_index(std::size_t index) const {
  const auto& ch = node_->children;
  auto it = std::lower_bound(ch.begin(), ch.end(), index, [](const CodeChild& c, std::size_t i) { return c.index < i; });
  if (it == ch.end() || it->index != index) return nullptr;
  return &it->code;
}

bool operator==(const Code& a, const Code& b) {
  if (a.node_ == b.node_) return true;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (x.kind != y.kind || x.rank != y.rank || x.children.size() != y.children.size()) return false;
  if (x.kind == NodeKind::Leaf) return x.label == y.label;
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (x.children[i].index != y.children[i].index || !(x.children[i].code == y.children[i].code)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Code subtree(const Code& c, const Address& a) {
  Code cur = c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Code* next = cur.child_with_index(a[i]);
    if (next == nullptr) throw ValidationError("no node at address '" + address_str(a) + "'");
    cur = *next;
  }
  return cur;
}

std::vector<Address> addresses(const Code& c) {
  std::vector<Address> out;
  std::deque<std::pair<Address, Code>> queue;
  queue.emplace_back(Address{}, c);
  while (!queue.empty()) {
    auto [addr, code] = std::move(queue.front());
    queue.pop_front();
    for (const auto& ch : code.children()) {
      Address next = addr;
      next.push_back(ch.index);
      queue.emplace_back(std::move(next), ch.code);
    }
    out.push_back(std::move(addr));
  }
  return out;
}

namespace {

template <class F>
void for_each_distinct(const Code& c, F&& f) {
  std::unordered_set<const Node*> seen;
  std::vector<Code> stack{c};
  while (!stack.empty()) {
    Code cur = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(cur.id()).second) continue;
    f(cur);
    for (const auto& ch : cur.children()) stack.push_back(ch.code);
  }
}

std::size_t count_rec(const Code& c, std::unordered_map<const Node*, std::size_t>& memo) {
  if (auto it = memo.find(c.id()); it != memo.end()) return it->second;
  std::size_t n = 1;
  for (const auto& ch : c.children()) n += count_rec(ch.code, memo);
  memo.emplace(c.id(), n);
  return n;
}

}  // namespace

std::size_t node_count(const Code& c) {
  std::unordered_map<const Node*, std::size_t> memo;
  return count_rec(c, memo);
}

std::size_t dag_size(const Code& c) {
  std::size_t n = 0;
  for_each_distinct(c, [&](const Code&) { ++n; });
  return n;
}

bool is_complement_free(const Code& c) {
  bool ok = true;
  for_each_distinct(c, [&](const Code& n) { ok = ok && n.kind() != NodeKind::Complement; });
  return ok;
}

bool is_alternating(const Code& c) {
  bool ok = true;
  for_each_distinct(c, [&](const Code& n) {
    if (n.kind() != NodeKind::Union && n.kind() != NodeKind::Intersection) return;
    for (const auto& ch : n.children()) {
      if (ch.code.kind() == n.kind() || ch.code.kind() == NodeKind::Complement) ok = false;
    }
  });
  return ok;
}

// ---------------------------------------------------------------------------

namespace {

Code demorgan_rec(const Code& c, bool negate, std::unordered_map<const Node*, Code> memo[2]) {
  auto& m = memo[negate ? 1 : 0];
  if (auto it = m.find(c.id()); it != m.end()) return it->second;
  Code out;
  switch (c.kind()) {
    case NodeKind::Leaf:
      out = negate ? Code::leaf(set_complement(c.label()), c.rank()) : c;
      break;
    case NodeKind::Complement:
      out = demorgan_rec(c.children().front().code, !negate, memo);
      break;
    case NodeKind::Union:
    case NodeKind::Intersection: {
      std::vector<CodeChild> ch;
      ch.reserve(c.children().size());
      for (const auto& child : c.children()) ch.push_back({child.index, demorgan_rec(child.code, negate, memo)});
      NodeKind k = c.kind();
      if (negate) k = k == NodeKind::Union ? NodeKind::Intersection : NodeKind::Union;
      out = Code::node(k, std::move(ch), c.rank());
      break;
    }
  }
  m.emplace(c.id(), out);
  return out;
}

std::optional<Ordinal> max_child_rank_plus_one(const std::vector<CodeChild>& ch) {
  Ordinal best(1);
  for (const auto& c : ch) {
    if (!c.code.rank()) return std::nullopt;
    if (*c.code.rank() > best) best = *c.code.rank();
  }
  return best.successor();
}

Code alternating_rec(const Code& c, std::unordered_map<const Node*, Code>& memo) {
  if (auto it = memo.find(c.id()); it != memo.end()) return it->second;
  Code out = c;
  if (c.kind() == NodeKind::Complement) throw ValidationError("make_alternating requires a complement-free code");
  if (c.kind() != NodeKind::Leaf) {
    std::vector<Code> flat;
    bool fused = false;
    for (const auto& ch : c.children()) {
      Code sub = alternating_rec(ch.code, memo);
      if (sub.kind() == c.kind()) {
        fused = true;
        for (const auto& g : sub.children()) flat.push_back(g.code);
      } else {
        flat.push_back(std::move(sub));
      }
    }
    std::vector<CodeChild> dense_children;
    for (std::size_t i = 0; i < flat.size(); ++i) dense_children.push_back({i, std::move(flat[i])});
    std::optional<Ordinal> rank = c.rank();
    if (fused && rank) rank = max_child_rank_plus_one(dense_children);
    out = Code::node(c.kind(), std::move(dense_children), rank);
  }
  memo.emplace(c.id(), out);
  return out;
}

Code canonical_rank_rec(const Code& c, std::unordered_map<const Node*, Code>& memo) {
  if (auto it = memo.find(c.id()); it != memo.end()) return it->second;
  Code out;
  if (c.is_leaf()) {
    out = c.with_rank(Ordinal(1));
  } else {
    std::vector<CodeChild> ch;
    for (const auto& child : c.children()) ch.push_back({child.index, canonical_rank_rec(child.code, memo)});
    auto r = max_child_rank_plus_one(ch);
    out = Code::node(c.kind(), std::move(ch), r);
  }
  memo.emplace(c.id(), out);
  return out;
}

}  // namespace

Code normalize_demorgan(const Code& c) {
  std::unordered_map<const Node*, Code> memo[2];
  return demorgan_rec(c, false, memo);
}

Code make_alternating(const Code& c) {
  std::unordered_map<const Node*, Code> memo;
  return alternating_rec(c, memo);
}

Code assign_canonical_ranks(const Code& c) {
  std::unordered_map<const Node*, Code> memo;
  return canonical_rank_rec(c, memo);
}

bool check_rank(const Code& c) {
  std::unordered_set<const Node*> seen;
  bool ok = true;
  std::vector<std::pair<Address, Code>> stack{{Address{}, c}};
  while (!stack.empty()) {
    auto [addr, cur] = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(cur.id()).second) continue;
    if (!cur.rank()) throw ValidationError("node at address '" + address_str(addr) + "' has no rank");
    if (cur.is_leaf() && *cur.rank() != Ordinal(1)) ok = false;
    for (const auto& ch : cur.children()) {
      if (!ch.code.rank()) {
        Address a = addr;
        a.push_back(ch.index);
        throw ValidationError("node at address '" + address_str(a) + "' has no rank");
      }
      if (!(*ch.code.rank() < *cur.rank())) ok = false;
      Address next = addr;
      next.push_back(ch.index);
      stack.emplace_back(std::move(next), ch.code);
    }
  }
  return ok;
}

// ---------------------------------------------------------------------------

namespace {

bool eval_rec(const Code& c, const Point& x, std::unordered_map<const Node*, bool>& memo) {
  if (auto it = memo.find(c.id()); it != memo.end()) return it->second;
  bool v = false;
  switch (c.kind()) {
    case NodeKind::Leaf:
      v = c.label().contains(x);
      break;
    case NodeKind::Union:
      v = false;
      for (const auto& ch : c.children()) v = eval_rec(ch.code, x, memo) || v;
      break;
    case NodeKind::Intersection:
      v = true;
      for (const auto& ch : c.children()) v = eval_rec(ch.code, x, memo) && v;
      break;
    case NodeKind::Complement:
      throw ValidationError("evaluate requires a complement-free code");
  }
  memo.emplace(c.id(), v);
  return v;
}

bool member_rec(const Code& c, const Point& x, std::unordered_map<const Node*, bool>& memo) {
  if (auto it = memo.find(c.id()); it != memo.end()) return it->second;
  bool v = false;
  switch (c.kind()) {
    case NodeKind::Leaf:
      v = c.label().contains(x);
      break;
    case NodeKind::Union:
      v = std::any_of(c.children().begin(), c.children().end(),
                      [&](const CodeChild& ch) { return member_rec(ch.code, x, memo); });
      break;
    case NodeKind::Intersection:
      v = std::all_of(c.children().begin(), c.children().end(),
                      [&](const CodeChild& ch) { return member_rec(ch.code, x, memo); });
      break;
    case NodeKind::Complement:
      throw ValidationError("member requires a complement-free code");
  }
  memo.emplace(c.id(), v);
  return v;
}

}  // namespace

EvalMap evaluate(const Code& c, const Point& x) {
  // Every node is visited (no short-circuit) so the map is total.
  std::unordered_map<const Node*, bool> values;
  eval_rec(c, x, values);
  return EvalMap(c, std::move(values));
}

bool member(const Code& c, const Point& x) {
  std::unordered_map<const Node*, bool> memo;
  return member_rec(c, x, memo);
}

bool satisfies_clauses(const Code& c, const Point& x, const EvalMap& map) {
  bool ok = true;
  for_each_distinct(c, [&](const Code& n) {
    auto it = map.values().find(n.id());
    if (it == map.values().end()) {
      ok = false;
      return;
    }
    bool expected = false;
    switch (n.kind()) {
      case NodeKind::Leaf:
        expected = n.label().contains(x);
        break;
      case NodeKind::Union:
      case NodeKind::Intersection: {
        const bool is_union = n.kind() == NodeKind::Union;
        expected = !is_union;
        for (const auto& ch : n.children()) {
          auto cv = map.values().find(ch.code.id());
          if (cv == map.values().end()) {
            ok = false;
            return;
          }
          expected = is_union ? (expected || cv->second) : (expected && cv->second);
        }
        break;
      }
      case NodeKind::Complement:
        ok = false;
        return;
    }
    if (expected != it->second) ok = false;
  });
  return ok;
}

std::vector<char> member_batch(const Code& c, std::span<const Point> points) {
  std::vector<char> out(points.size(), 0);
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = member(c, points[static_cast<std::size_t>(i)]) ? 1 : 0;
  }
  return out;
}

std::vector<char> member_batch_serial(const Code& c, std::span<const Point> points) {
  std::vector<char> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(member(c, p) ? 1 : 0);
  return out;
}

std::size_t support_depth(const Code& c) {
  std::size_t d = 0;
  for_each_distinct(c, [&](const Code& n) {
    if (n.is_leaf()) d = std::max(d, n.label().max_length());
  });
  return d;
}

// ---------------------------------------------------------------------------

namespace {

Code relocate_rec(const Bits& prefix, const Code& c, std::unordered_map<const Node*, Code>& memo) {
  if (auto it = memo.find(c.id()); it != memo.end()) return it->second;
  Code out;
  switch (c.kind()) {
    case NodeKind::Leaf:
      out = Code::leaf(c.label().prefixed(prefix), c.rank());
      break;
    case NodeKind::Complement:
      throw ValidationError("relocate requires a complement-free code");
    default: {
      std::vector<CodeChild> ch;
      for (const auto& child : c.children()) ch.push_back({child.index, relocate_rec(prefix, child.code, memo)});
      // an empty intersection is the whole space; it has no leaf to carry the prefix
      if (ch.empty() && c.kind() == NodeKind::Intersection) {
        ch.push_back({0, Code::leaf(ClopenSet::cylinder(prefix), c.rank() ? std::optional<Ordinal>(Ordinal(1)) : std::nullopt)});
      }
      out = Code::node(c.kind(), std::move(ch), c.rank());
    }
  }
  memo.emplace(c.id(), out);
  return out;
}

}  // namespace

Code relocate(std::size_t n, const Code& c) {
  std::unordered_map<const Node*, Code> memo;
  return relocate_rec(Bits::zeros(n) + Bits("1"), c, memo);
}

Code tilde(const Code& c, const std::vector<Address>& h) {
  std::set<Address> hit(h.begin(), h.end());
  for (const auto& a : addresses(c)) {
    if (hit.count(a) == 0) throw ValidationError("index map misses address '" + address_str(a) + "'");
  }
  std::vector<Code> parts;
  parts.reserve(h.size());
  for (std::size_t n = 0; n < h.size(); ++n) parts.push_back(relocate(n, subtree(c, h[n])));
  return Code::union_of(std::move(parts));
}

// ---------------------------------------------------------------------------

Formula Formula::truth(bool v) {
  return Formula(std::make_shared<const FNode>(FNode{v ? FormulaKind::True : FormulaKind::False, {}}));
}

Formula Formula::conjunction(std::vector<Formula> children) {
  return Formula(std::make_shared<const FNode>(FNode{FormulaKind::And, std::move(children)}));
}

Formula Formula::disjunction(std::vector<Formula> children) {
  return Formula(std::make_shared<const FNode>(FNode{FormulaKind::Or, std::move(children)}));
}

namespace {

bool formula_rec(const Formula& f, std::unordered_map<const void*, bool>& values) {
  if (auto it = values.find(f.id()); it != values.end()) return it->second;
  bool v = false;
  switch (f.kind()) {
    case FormulaKind::True:
      v = true;
      break;
    case FormulaKind::False:
      v = false;
      break;
    case FormulaKind::And:
      v = true;
      for (const auto& ch : f.children()) v = formula_rec(ch, values) && v;
      break;
    case FormulaKind::Or:
      v = false;
      for (const auto& ch : f.children()) v = formula_rec(ch, values) || v;
      break;
  }
  values.emplace(f.id(), v);
  return v;
}

Code encode_rec(const Formula& f, const ClopenSet& true_leaf, std::unordered_map<const void*, Code>& memo) {
  if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
  Code out;
  switch (f.kind()) {
    case FormulaKind::True:
      out = Code::leaf(true_leaf);
      break;
    case FormulaKind::False:
      out = Code::leaf(ClopenSet::empty());
      break;
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Code> ch;
      for (const auto& c : f.children()) ch.push_back(encode_rec(c, true_leaf, memo));
      out = f.kind() == FormulaKind::And ? Code::inter_of(std::move(ch)) : Code::union_of(std::move(ch));
    }
  }
  memo.emplace(f.id(), out);
  return out;
}

}  // namespace

FormulaEval eval_formula(const Formula& phi) {
  FormulaEval out;
  out.root = formula_rec(phi, out.values);
  return out;
}

Code encode_formulas(std::span<const Formula> phis) {
  std::vector<Code> parts;
  parts.reserve(phis.size());
  for (std::size_t n = 0; n < phis.size(); ++n) {
    std::unordered_map<const void*, Code> memo;
    parts.push_back(encode_rec(phis[n], ClopenSet::cylinder(Bits::zeros(n) + Bits("1")), memo));
  }
  return Code::union_of(std::move(parts));
}

}  // namespace cantor
