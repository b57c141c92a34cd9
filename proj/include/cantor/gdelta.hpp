#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cantor/bits.hpp"
#include "cantor/l1_name.hpp"
#include "cantor/open_set.hpp"
#include "cantor/point.hpp"

namespace cantor {

/// A rapidly null G-delta set: levels n -> staged open sets U_n with
/// mu_I(U_n) <= 2^-n at every stage. Denotes the intersection of the levels.
///
/// stage() re-checks the budget on every materialization and throws
/// CertificateError naming the test, level and stage when it fails, so no
/// caller can observe an over-budget stage without an error.
class RapidGDelta {
 public:
  using LevelFn = std::function<StagedOpenSet(std::size_t)>;

  RapidGDelta(std::string name, LevelFn levels);

  /// Every level empty.
  static RapidGDelta empty(std::string name);
  /// levels[n][s] is stage s of level n; stages past the end repeat the last,
  /// levels past the end are empty.
  static RapidGDelta from_stages(std::string name, std::vector<std::vector<ClopenSet>> levels);

  const std::string& name() const { return name_; }
  StagedOpenSet level(std::size_t n) const;
  ClopenSet stage(std::size_t level, std::size_t s) const;
  ClopenSet unchecked_stage(std::size_t level, std::size_t s) const;

 private:
  struct Cache;
  std::string name_;
  std::shared_ptr<Cache> cache_;
};

/// Level j stage s is the union over n <= min(s, bound) of input n's level
/// n+j+1 at stage s, so its measure is at most sum_n 2^-(n+j+1) <= 2^-j.
/// `bound` caps the diagonal schedule; by default it is the stage itself.
RapidGDelta combine(const std::vector<RapidGDelta>& tests, std::string name = "combined",
                    std::optional<std::size_t> bound = std::nullopt);

struct Avoidance {
  bool captured = false;
  std::size_t level = 0;
  Bits cylinder;  // the generator of the stage that contains the point
};

/// Whether x lies in the given level's stage antichain. Not capturing is only
/// a statement about that stage, never a proof that x avoids the G-delta.
Avoidance avoids(const Point& x, const RapidGDelta& t, std::size_t level, std::size_t stage);

/// Exact mu_I of a stage; throws CertificateError when it exceeds 2^-level.
Dyadic budget_report(const RapidGDelta& t, std::size_t level, std::size_t stage);

/// Points where a sequence fails to converge fast: level k stage s is the
/// union of the bad sets A_n, k < n <= k+1+s, at stage s.
RapidGDelta convergence_test(const L1Name& n, std::string name = "convergence");
RapidGDelta convergence_test(const TermSequence& seq, std::string name = "convergence");

/// Points outside it have both names converging to the same value: combines
/// the convergence tests of f, g and of <f_2, g_3, f_4, ...>.
RapidGDelta agreement_test(const L1Name& f, const L1Name& g, std::string name = "agreement");

/// Exclusion set for a diagonal built from names h_j with
/// ||h_j - h_{j+1}|| <= 2^-j converging to g: the convergence test of the
/// diagonal, its agreement with g, and C_k = union over j > k, n > j of
/// A_n(h_j), staged diagonally (j and n both run s steps past their start).
RapidGDelta diagonal_test(const std::vector<L1Name>& hs, const L1Name& g, std::string name = "diagonal");

}  // namespace cantor
