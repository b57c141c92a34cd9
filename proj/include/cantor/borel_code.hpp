#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/ordinal.hpp"
#include "cantor/point.hpp"

namespace cantor {

enum class NodeKind { Leaf, Union, Intersection, Complement };

const char* kind_name(NodeKind k);

struct Node;
struct CodeChild;

/// Path of child index labels from the root; the root is the empty path.
using Address = std::vector<std::size_t>;

std::string address_str(const Address& a);
Address parse_address(std::string_view s);

/// A finite labeled Borel code: leaves carry clopen sets, inner nodes are
/// unions or intersections. Complement nodes may appear before normalization.
///
/// Codes are immutable and share subtrees freely, so a code is really a DAG;
/// every algorithm here treats it as the tree it unfolds to. Child edges carry
/// an explicit index label (dense 0..k-1 unless a construction says otherwise).
class Code {
 public:
  Code();  // leaf denoting the empty set

  static Code leaf(ClopenSet label, std::optional<Ordinal> rank = std::nullopt);
  static Code union_of(std::vector<Code> children);
  static Code inter_of(std::vector<Code> children);
  static Code complement(Code child);
  static Code node(NodeKind kind, std::vector<CodeChild> children, std::optional<Ordinal> rank = std::nullopt);
  /// Union over n in [lo, hi] of rule(n), materialized now.
  static Code big_union(std::size_t lo, std::size_t hi, const std::function<Code(std::size_t)>& rule);
  static Code big_inter(std::size_t lo, std::size_t hi, const std::function<Code(std::size_t)>& rule);

  NodeKind kind() const;
  bool is_leaf() const { return kind() == NodeKind::Leaf; }
  const ClopenSet& label() const;
  const std::vector<CodeChild>& children() const;
  const std::optional<Ordinal>& rank() const;

  Code with_rank(std::optional<Ordinal> r) const;

  /// Child carrying index label `index`, if any.
  const Code* child_with_index(std::size_t index) const;

  const Node* id() const { return node_.get(); }

  friend bool operator==(const Code& a, const Code& b);

 private:
  explicit Code(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct CodeChild {
  std::size_t index;
  Code code;
};

struct Node {
  NodeKind kind = NodeKind::Leaf;
  ClopenSet label;
  std::vector<CodeChild> children;
  std::optional<Ordinal> rank;
};

// ---- structure ----

/// Subtree at an address; throws ValidationError for a missing address.
Code subtree(const Code& c, const Address& a);
/// All addresses of the unfolded tree in breadth-first order (root first).
std::vector<Address> addresses(const Code& c);
std::size_t node_count(const Code& c);
/// Number of distinct shared nodes.
std::size_t dag_size(const Code& c);

bool is_complement_free(const Code& c);
bool is_alternating(const Code& c);

// ---- normalizations ----

/// Pushes complements to the leaves by De Morgan; ranks of surviving nodes are kept.
Code normalize_demorgan(const Code& c);

/// Fuses same-kind parent/child chains. A node that absorbed children gets rank
/// max(child ranks) + 1 when all its new children are ranked.
Code make_alternating(const Code& c);

/// Leaves 1, inner nodes max(child ranks) + 1 (an empty inner node gets 2).
Code assign_canonical_ranks(const Code& c);

/// True iff every leaf has rank 1 and every child rank is strictly below its
/// parent's. Throws ValidationError naming the address of an unranked node.
bool check_rank(const Code& c);

// ---- evaluation ----

/// The evaluation map of a point in a complement-free code, keyed by node.
///
/// Shared subtrees evaluate identically, so a value per distinct node is a
/// value per address. at() resolves an address.
class EvalMap {
 public:
  EvalMap() = default;
  EvalMap(Code root, std::unordered_map<const Node*, bool> values)
      : root_(std::move(root)), values_(std::move(values)) {}

  bool root_value() const { return values_.at(root_.id()); }
  bool at(const Address& a) const { return values_.at(subtree(root_, a).id()); }
  bool value(const Node* n) const { return values_.at(n); }
  void set(const Node* n, bool v) { values_[n] = v; }
  const std::unordered_map<const Node*, bool>& values() const { return values_; }
  const Code& root() const { return root_; }

 private:
  Code root_;
  std::unordered_map<const Node*, bool> values_;
};

EvalMap evaluate(const Code& c, const Point& x);
bool member(const Code& c, const Point& x);

/// True when `map` is total on c and satisfies the leaf, union and
/// intersection clauses at every node for the point x.
bool satisfies_clauses(const Code& c, const Point& x, const EvalMap& map);

/// Membership of many points; OpenMP-parallel over points.
std::vector<char> member_batch(const Code& c, std::span<const Point> points);
/// Serial reference for member_batch.
std::vector<char> member_batch_serial(const Code& c, std::span<const Point> points);

/// Longest leaf generator; membership depends only on this many bits.
std::size_t support_depth(const Code& c);

// ---- relocation ----

/// Every leaf generator p becomes 0^n 1 p. An empty intersection gets the
/// single child [0^n 1], so the result always lies inside that cylinder.
Code relocate(std::size_t n, const Code& c);

/// Union over n of relocate(n, subtree at h[n]); h must hit every address of c.
Code tilde(const Code& c, const std::vector<Address>& h);

// ---- formulas of the infinitary propositional language ----

enum class FormulaKind { True, False, And, Or };

/// A finite formula tree with true/false leaves.
class Formula {
 public:
  static Formula truth(bool v);
  static Formula conjunction(std::vector<Formula> children);
  static Formula disjunction(std::vector<Formula> children);

  FormulaKind kind() const { return node_->kind; }
  const std::vector<Formula>& children() const { return node_->children; }
  const void* id() const { return node_.get(); }

 private:
  struct FNode {
    FormulaKind kind;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const FNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FNode> node_;
};

struct FormulaEval {
  bool root = false;
  std::unordered_map<const void*, bool> values;
};

/// The unique determination map; an empty disjunction is false and an empty conjunction true.
FormulaEval eval_formula(const Formula& phi);

/// true leaves of phi_n become [0^n 1], false leaves become the empty set, and
/// the result is the union over n.
Code encode_formulas(std::span<const Formula> phis);

}  // namespace cantor
