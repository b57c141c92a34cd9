#include "cantor/step_function.hpp"

#include <algorithm>
#include <stdexcept>

#include "cantor/errors.hpp"

namespace cantor {

using NodePtr = StepFunction::NodePtr;
using Node = StepFunction::Node;

namespace {

NodePtr make_leaf(Dyadic v) {
  auto n = std::make_shared<Node>();
  n->leaf = true;
  n->value = std::move(v);
  return n;
}

NodePtr make_split(NodePtr a, NodePtr b) {
  if (a->leaf && b->leaf && a->value == b->value) return a;
  auto n = std::make_shared<Node>();
  n->leaf = false;
  n->zero = std::move(a);
  n->one = std::move(b);
  return n;
}

const NodePtr& half(const NodePtr& n, bool bit) {
  if (n->leaf) return n;
  return bit ? n->one : n->zero;
}

NodePtr assign(const NodePtr& n, const Bits& p, std::size_t idx, const NodePtr& value) {
  if (idx == p.size()) return value;
  const bool b = p[idx];
  NodePtr lo = half(n, false);
  NodePtr hi = half(n, true);
  if (b) {
    hi = assign(hi, p, idx + 1, value);
  } else {
    lo = assign(lo, p, idx + 1, value);
  }
  return make_split(std::move(lo), std::move(hi));
}

NodePtr build_table(const std::vector<Dyadic>& values, std::size_t lo, std::size_t len) {
  if (len == 1) return make_leaf(values[lo]);
  return make_split(build_table(values, lo, len / 2), build_table(values, lo + len / 2, len / 2));
}

std::size_t depth_rec(const NodePtr& n) {
  if (n->leaf) return 0;
  return 1 + std::max(depth_rec(n->zero), depth_rec(n->one));
}

std::size_t count_rec(const NodePtr& n) { return n->leaf ? 1 : count_rec(n->zero) + count_rec(n->one); }

void cells_rec(const NodePtr& n, std::string& prefix, std::vector<StepFunction::Cell>& out) {
  if (n->leaf) {
    out.push_back({Bits(prefix), n->value});
    return;
  }
  prefix.push_back('0');
  cells_rec(n->zero, prefix, out);
  prefix.back() = '1';
  cells_rec(n->one, prefix, out);
  prefix.pop_back();
}

void table_rec(const NodePtr& n, std::size_t remaining, std::vector<Dyadic>& out) {
  if (n->leaf) {
    out.insert(out.end(), std::size_t{1} << remaining, n->value);
    return;
  }
  table_rec(n->zero, remaining - 1, out);
  table_rec(n->one, remaining - 1, out);
}

/// Integral of the function on a cylinder, normalized to that cylinder.
Dyadic average_rec(const NodePtr& n) {
  if (n->leaf) return n->value;
  return (average_rec(n->zero) + average_rec(n->one)).shifted(-1);
}

NodePtr average_to_depth_rec(const NodePtr& n, std::size_t remaining) {
  if (n->leaf) return n;
  if (remaining == 0) return make_leaf(average_rec(n));
  return make_split(average_to_depth_rec(n->zero, remaining - 1), average_to_depth_rec(n->one, remaining - 1));
}

void where_rec(const NodePtr& n, std::string& prefix, const std::function<bool(const Dyadic&)>& pred,
               std::vector<Bits>& out) {
  if (n->leaf) {
    if (pred(n->value)) out.emplace_back(prefix);
    return;
  }
  prefix.push_back('0');
  where_rec(n->zero, prefix, pred, out);
  prefix.back() = '1';
  where_rec(n->one, prefix, pred, out);
  prefix.pop_back();
}

NodePtr map_rec(const NodePtr& n, const std::function<Dyadic(const Dyadic&)>& op) {
  if (n->leaf) return make_leaf(op(n->value));
  return make_split(map_rec(n->zero, op), map_rec(n->one, op));
}

NodePtr combine_rec(const NodePtr& a, const NodePtr& b, const std::function<Dyadic(const Dyadic&, const Dyadic&)>& op) {
  if (a->leaf && b->leaf) return make_leaf(op(a->value, b->value));
  return make_split(combine_rec(half(a, false), half(b, false), op), combine_rec(half(a, true), half(b, true), op));
}

bool equal_rec(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (a->leaf != b->leaf) return false;
  if (a->leaf) return a->value == b->value;
  return equal_rec(a->zero, b->zero) && equal_rec(a->one, b->one);
}

Dyadic distance_rec(const NodePtr& a, const NodePtr& b) {
  if (a == b) return Dyadic(0);
  if (a->leaf && b->leaf) return abs(a->value - b->value);
  return (distance_rec(half(a, false), half(b, false)) + distance_rec(half(a, true), half(b, true))).shifted(-1);
}

}  // namespace

StepFunction::StepFunction() : root_(make_leaf(Dyadic(0))) {}

StepFunction StepFunction::constant(Dyadic c) { return StepFunction(make_leaf(std::move(c))); }

StepFunction StepFunction::indicator(const ClopenSet& s) {
  NodePtr root = make_leaf(Dyadic(0));
  const NodePtr one = make_leaf(Dyadic(1));
  for (const auto& g : s.generators()) root = assign(root, g, 0, one);
  return StepFunction(root);
}

StepFunction StepFunction::from_table(std::size_t depth, const std::vector<Dyadic>& values) {
  if (depth >= 63 || values.size() != (std::size_t{1} << depth)) {
    throw ValidationError("step function table of depth " + std::to_string(depth) + " needs 2^depth values");
  }
  return StepFunction(build_table(values, 0, values.size()));
}

StepFunction StepFunction::from_cells(const std::vector<Cell>& cells) {
  NodePtr root = make_leaf(Dyadic(0));
  for (const auto& c : cells) root = assign(root, c.prefix, 0, make_leaf(c.value));
  return StepFunction(root);
}

std::size_t StepFunction::depth() const { return depth_rec(root_); }
std::size_t StepFunction::cell_count() const { return count_rec(root_); }

std::vector<StepFunction::Cell> StepFunction::cells() const {
  std::vector<Cell> out;
  std::string prefix;
  cells_rec(root_, prefix, out);
  return out;
}

std::vector<Dyadic> StepFunction::table(std::size_t depth) const {
  if (depth < this->depth() || depth >= 63) throw std::invalid_argument("StepFunction::table: depth out of range");
  std::vector<Dyadic> out;
  out.reserve(std::size_t{1} << depth);
  table_rec(root_, depth, out);
  return out;
}

bool StepFunction::is_constant() const { return root_->leaf; }

Dyadic StepFunction::value(const Point& x) const {
  const Node* n = root_.get();
  std::uint64_t pos = 0;
  while (!n->leaf) n = (x.bit(pos++) ? n->one : n->zero).get();
  return n->value;
}

std::optional<Dyadic> StepFunction::value_on(const Bits& p) const {
  const Node* n = root_.get();
  for (std::size_t i = 0; i < p.size() && !n->leaf; ++i) n = (p[i] ? n->one : n->zero).get();
  if (!n->leaf) return std::nullopt;
  return n->value;
}

Dyadic StepFunction::integral() const { return average_rec(root_); }

Dyadic StepFunction::integral_over(const Bits& p) const {
  return restrict(p).integral().shifted(-static_cast<std::int64_t>(p.size()));
}

StepFunction StepFunction::restrict(const Bits& p) const {
  NodePtr n = root_;
  for (std::size_t i = 0; i < p.size() && !n->leaf; ++i) n = p[i] ? n->one : n->zero;
  return StepFunction(n);
}

StepFunction StepFunction::prefixed(const Bits& p) const {
  NodePtr n = root_;
  const NodePtr zero = make_leaf(Dyadic(0));
  for (std::size_t i = p.size(); i-- > 0;) n = p[i] ? make_split(zero, n) : make_split(n, zero);
  return StepFunction(n);
}

StepFunction StepFunction::average_to_depth(std::size_t i) const { return StepFunction(average_to_depth_rec(root_, i)); }

ClopenSet StepFunction::where(const std::function<bool(const Dyadic&)>& pred) const {
  std::vector<Bits> gens;
  std::string prefix;
  where_rec(root_, prefix, pred, gens);
  return prefix_free_normalize(gens);
}

StepFunction StepFunction::map(const std::function<Dyadic(const Dyadic&)>& op) const {
  return StepFunction(map_rec(root_, op));
}

StepFunction StepFunction::combine(const StepFunction& f, const StepFunction& g,
                                   const std::function<Dyadic(const Dyadic&, const Dyadic&)>& op) {
  return StepFunction(combine_rec(f.root_, g.root_, op));
}

StepFunction operator+(const StepFunction& f, const StepFunction& g) {
  return StepFunction::combine(f, g, [](const Dyadic& a, const Dyadic& b) { return a + b; });
}

StepFunction operator-(const StepFunction& f, const StepFunction& g) {
  return StepFunction::combine(f, g, [](const Dyadic& a, const Dyadic& b) { return a - b; });
}

StepFunction operator*(const StepFunction& f, const StepFunction& g) {
  return StepFunction::combine(f, g, [](const Dyadic& a, const Dyadic& b) { return a * b; });
}

StepFunction StepFunction::operator-() const {
  return map([](const Dyadic& a) { return -a; });
}

StepFunction StepFunction::scaled(const Dyadic& c) const {
  return map([&](const Dyadic& a) { return a * c; });
}

bool operator==(const StepFunction& f, const StepFunction& g) { return equal_rec(f.root_, g.root_); }

StepFunction abs(const StepFunction& f) {
  return f.map([](const Dyadic& a) { return abs(a); });
}

StepFunction pointwise_max(const StepFunction& f, const StepFunction& g) {
  return StepFunction::combine(f, g, [](const Dyadic& a, const Dyadic& b) { return max(a, b); });
}

StepFunction pointwise_min(const StepFunction& f, const StepFunction& g) {
  return StepFunction::combine(f, g, [](const Dyadic& a, const Dyadic& b) { return min(a, b); });
}

Dyadic l1_norm(const StepFunction& f, const StepFunction& g) { return distance_rec(f.root(), g.root()); }

}  // namespace cantor
