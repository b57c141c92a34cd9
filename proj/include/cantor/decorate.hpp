#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "cantor/borel_code.hpp"
#include "cantor/ordinal.hpp"

namespace cantor {

struct DecorationPair {
  Code p;
  Code n;
};

/// Maps a budget entry b (with its position b_hat in the budget list) to a
/// pair of alternating b-ranked codes, each with an intersection or a leaf at
/// the root.
class DecorationGenerator {
 public:
  using Fn = std::function<DecorationPair(const Ordinal& b, std::size_t b_hat)>;

  DecorationGenerator(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  const std::string& name() const { return name_; }
  DecorationPair operator()(const Ordinal& b, std::size_t b_hat) const { return fn_(b, b_hat); }

 private:
  std::string name_;
  Fn fn_;
};

/// An alternating code of root rank b and the given root kind denoting
/// `label`: a chain of single children down to a rank-1 leaf. A limit rank
/// steps to the first element of its fundamental sequence.
Code chain_code(const Ordinal& b, const ClopenSet& label, NodeKind root);

/// An alternating b-ranked code for the empty set. Limit ranks get two
/// children, of ranks b[0] and b[1].
Code empty_set_code(const Ordinal& b, NodeKind root = NodeKind::Union);

/// P_b = N_b = an intersection-rooted b-ranked code for the empty set.
DecorationGenerator empty_generator();

/// targets[b_hat] is S_b; entries past the end are empty. P_b = {g0 : g in S_b}
/// and N_b = {g1 : g in S_b}, split on the bit right after each generator.
/// Throws ValidationError when two targets meet or mu_I(S_b) > 2^-b_hat.
DecorationGenerator split_generator(std::vector<ClopenSet> targets);

/// Checks one generator output for b; throws ValidationError naming b.
void validate_generator_output(const DecorationPair& pair, const Ordinal& b);

/// Original child n moves to index 2n; for every budget entry b below the
/// node's rank a child at 2 b_hat + 1 holds the decorated P_b (union nodes) or
/// the decorated De Morgan normal form of the complement of N_b
/// (intersection nodes). Ranks and labels are kept. Shared subtrees stay
/// shared, so the result is a DAG whose unfolding may be much larger.
Code decorate(const Code& t, const DecorationGenerator& h, const std::vector<Ordinal>& budget);
/// Budget default_budget(root rank).
Code decorate(const Code& t, const DecorationGenerator& h);

struct PreservationReport {
  std::size_t points = 0;
  std::size_t outside = 0;    // points in no |P_b| or |N_b|
  std::size_t preserved = 0;  // outside points whose membership did not change
  std::size_t inside = 0;
  std::size_t unique_maps = 0;  // inside points with a verified unique evaluation map
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Membership preservation for points outside every generator set, and a
/// unique evaluation map of the decorated code for points inside one.
PreservationReport check_preservation(const Code& t, const DecorationGenerator& h, const std::vector<Ordinal>& budget,
                                      const std::vector<Point>& points);

/// The evaluation map of x is total, satisfies every clause, and agrees at
/// every node with an independent short-circuit membership evaluation.
bool evaluation_map_unique(const Code& c, const Point& x);

}  // namespace cantor
