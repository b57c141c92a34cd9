#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "cantor/bits.hpp"
#include "cantor/clopen.hpp"
#include "cantor/dyadic.hpp"
#include "cantor/point.hpp"

namespace cantor {

/// A function on Cantor space that is constant on the cylinders of some finite depth.
///
/// Stored as a binary trie whose leaves carry dyadic values. A split whose two
/// halves are equal constants is always collapsed, so the trie is canonical:
/// two step functions are equal iff their tries are, and depth() is the
/// minimal depth on which the function is cylinder-wise constant. The trie is
/// what keeps functions like relocated characteristic functions (depth ~60,
/// a handful of cells) cheap; a dense 2^d table would not be.
class StepFunction {
 public:
  struct Cell {
    Bits prefix;
    Dyadic value;
  };

  StepFunction();  // the zero function

  static StepFunction constant(Dyadic c);
  static StepFunction indicator(const ClopenSet& s);
  /// values[k] is the value on the k-th depth-d cylinder in lexicographic order.
  static StepFunction from_table(std::size_t depth, const std::vector<Dyadic>& values);
  /// Starts from zero and assigns each cell's value on its cylinder, later cells winning.
  static StepFunction from_cells(const std::vector<Cell>& cells);

  std::size_t depth() const;
  std::size_t cell_count() const;
  /// The maximal constant cylinders, lexicographic; they partition the space.
  std::vector<Cell> cells() const;
  /// Value table at the given depth (>= depth()), lexicographic.
  std::vector<Dyadic> table(std::size_t depth) const;

  bool is_constant() const;
  Dyadic value(const Point& x) const;
  /// Value on [p] when it is constant there.
  std::optional<Dyadic> value_on(const Bits& p) const;

  Dyadic integral() const;
  /// Integral over the cylinder [p] (not normalized).
  Dyadic integral_over(const Bits& p) const;

  /// x -> f(p x).
  StepFunction restrict(const Bits& p) const;
  /// p x -> f(x), zero off [p].
  StepFunction prefixed(const Bits& p) const;
  /// Replaces f on every depth-i cylinder [p] by its average 2^i * integral over [p].
  StepFunction average_to_depth(std::size_t i) const;

  /// The clopen set of points whose value satisfies pred.
  ClopenSet where(const std::function<bool(const Dyadic&)>& pred) const;

  StepFunction map(const std::function<Dyadic(const Dyadic&)>& op) const;
  static StepFunction combine(const StepFunction& f, const StepFunction& g,
                              const std::function<Dyadic(const Dyadic&, const Dyadic&)>& op);

  friend StepFunction operator+(const StepFunction& f, const StepFunction& g);
  friend StepFunction operator-(const StepFunction& f, const StepFunction& g);
  friend StepFunction operator*(const StepFunction& f, const StepFunction& g);
  StepFunction operator-() const;
  StepFunction scaled(const Dyadic& c) const;

  friend bool operator==(const StepFunction& f, const StepFunction& g);

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  const NodePtr& root() const { return root_; }

 private:
  explicit StepFunction(NodePtr r) : root_(std::move(r)) {}
  NodePtr root_;
};

struct StepFunction::Node {
  bool leaf = true;
  Dyadic value;
  NodePtr zero;
  NodePtr one;
};

StepFunction abs(const StepFunction& f);
StepFunction pointwise_max(const StepFunction& f, const StepFunction& g);
StepFunction pointwise_min(const StepFunction& f, const StepFunction& g);

/// Exact L1 distance: the integral of |f - g|.
Dyadic l1_norm(const StepFunction& f, const StepFunction& g);

}  // namespace cantor
