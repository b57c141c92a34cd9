#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "cantor/clopen.hpp"

namespace cantor {

/// An open set given by a monotone staged enumeration of prefix-free antichains.
///
/// Stage s is a pure function of s; the denoted set is the union over all
/// stages. Monotonicity (stage s is contained in stage s+1) is a contract of the
/// producer and can be audited with check_monotone().
class StagedOpenSet {
 public:
  using StageFn = std::function<ClopenSet(std::size_t)>;

  StagedOpenSet() : fn_([](std::size_t) { return ClopenSet(); }) {}
  explicit StagedOpenSet(StageFn fn, std::optional<Dyadic> declared_budget = std::nullopt)
      : fn_(std::move(fn)), budget_(std::move(declared_budget)) {}

  static StagedOpenSet constant(ClopenSet s);
  /// Stages beyond the end repeat the last entry.
  static StagedOpenSet from_stages(std::vector<ClopenSet> stages);

  ClopenSet stage(std::size_t s) const { return fn_(s); }
  const std::optional<Dyadic>& declared_budget() const { return budget_; }

  /// True when stages 0..upto are each contained in the next.
  bool check_monotone(std::size_t upto) const;

 private:
  StageFn fn_;
  std::optional<Dyadic> budget_;
};

inline Dyadic mu_I(const StagedOpenSet& u, std::size_t stage) { return mu_I(u.stage(stage)); }

}  // namespace cantor
