#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "cantor/dyadic.hpp"
#include "cantor/open_set.hpp"
#include "cantor/point.hpp"
#include "cantor/step_function.hpp"

namespace cantor {

/// A materialized prefix of a sequence of step functions.
///
/// When `stationary` is set the last term repeats forever, so the sequence is
/// known completely; otherwise only indices below size() exist.
class TermSequence {
 public:
  TermSequence() = default;
  TermSequence(std::vector<StepFunction> terms, bool stationary);

  std::size_t size() const { return terms_.size(); }
  bool stationary() const { return stationary_; }
  bool has(std::size_t i) const { return i < terms_.size() || (stationary_ && !terms_.empty()); }
  /// Throws ValidationError past the materialized prefix of a non-stationary sequence.
  const StepFunction& at(std::size_t i) const;
  const std::vector<StepFunction>& terms() const { return terms_; }

  /// Number of indices i whose difference f_i - f_{i+1} can be nonzero. For a
  /// stationary sequence every later difference is zero, so both cases give size() - 1.
  std::size_t difference_count() const { return terms_.empty() ? 0 : terms_.size() - 1; }

 private:
  std::vector<StepFunction> terms_;
  bool stationary_ = false;
};

/// A certified rapidly Cauchy sequence: ||f_i - f_{i+1}||_1 < 2^-i for every
/// materialized i. Built only by certify_rapid_cauchy or constant().
class L1Name {
 public:
  static L1Name constant(const StepFunction& f);

  const TermSequence& sequence() const { return seq_; }
  const StepFunction& term(std::size_t i) const { return seq_.at(i); }
  std::size_t size() const { return seq_.size(); }
  bool stationary() const { return seq_.stationary(); }
  /// Deepest materialized index.
  std::size_t last_index() const { return seq_.size() - 1; }
  /// norms()[i] = ||f_i - f_{i+1}||_1, the certificate.
  const std::vector<Dyadic>& norms() const { return norms_; }

  /// The limit, available when the name is stationary.
  std::optional<StepFunction> limit() const;

 private:
  friend L1Name certify_rapid_cauchy(std::vector<StepFunction> seq, bool stationary);
  L1Name(TermSequence s, std::vector<Dyadic> n) : seq_(std::move(s)), norms_(std::move(n)) {}

  TermSequence seq_;
  std::vector<Dyadic> norms_;
};

/// Checks ||f_i - f_{i+1}||_1 < 2^-i strictly; throws CertificateError naming
/// the first failing index and the exact norm.
L1Name certify_rapid_cauchy(std::vector<StepFunction> seq, bool stationary = false);

/// [integral f_i - 2^-i+1, integral f_i + 2^-i+1] at the deepest materialized i.
DyadicInterval integral(const L1Name& n);
/// Exact integral of the limit of a stationary name.
std::optional<Dyadic> limit_integral(const L1Name& n);

// ---- bad sets ----

/// Stage N of A_level: the cylinders on which sum_{i=2 level+1}^{N} |f_i - f_{i+1}|
/// exceeds 2^-level. N is clamped to the materialized differences.
ClopenSet bad_set_stage(const TermSequence& seq, std::size_t level, std::size_t stage);

/// The staged open set A_level for an arbitrary sequence; declared budget
/// 2^-level, not enforced here.
StagedOpenSet bad_set(const TermSequence& seq, std::size_t level);

/// A_level for a certified name. The budget mu_I <= 2^-level is asserted on
/// every stage (CertificateError if it ever fails).
StagedOpenSet bad_set(const L1Name& n, std::size_t level);

// ---- pointwise values ----

struct Captured {
  std::size_t level;
  friend bool operator==(const Captured&, const Captured&) = default;
};

using PointValue = std::variant<Dyadic, Captured>;

/// Evaluates a name at points to precision 2^-precision, refusing points that
/// lie in a bad set A_j with j >= avoid_level (smallest such j is reported).
/// Bad sets are inspected at the deepest materialized stage and cached, so
/// the evaluator is cheap to reuse across many points.
class PointEvaluator {
 public:
  PointEvaluator(const L1Name& n, std::size_t precision, std::size_t avoid_level);

  PointValue operator()(const Point& x) const;
  /// The term index m = 2 max(precision, avoid_level) + 1 that is evaluated.
  std::size_t term_index() const { return m_; }

 private:
  const L1Name* name_;
  std::size_t m_;
  std::size_t k_;
  std::vector<ClopenSet> bad_;  // bad_[j - k_]
};

PointValue value_at(const L1Name& n, const Point& x, std::size_t precision, std::size_t avoid_level);

// ---- comparison ----

struct NameComparison {
  bool equal;
  Dyadic residual;    // ||f_i - g_i||_1
  std::size_t index;  // the i it was taken at
  Dyadic tolerance;   // 2^-i+2, or 0 when both names are already stationary at i
};

/// Two names of the same element are within 2^-i+2 of each other at index i.
/// With no bound, the deepest index both names cover is used. When both names
/// are stationary by that index the residual is the exact distance of the
/// limits and equality means residual 0.
NameComparison names_equal(const L1Name& a, const L1Name& b, std::optional<std::size_t> bound = std::nullopt);

/// <f_2, g_3, f_4, g_5, ...>; rapidly Cauchy exactly when both name one element.
TermSequence interleave(const L1Name& f, const L1Name& g);

// ---- diagonal, sup and inf ----

struct DiagonalResult {
  L1Name name;                       // terms f^{i+2}
  std::vector<StepFunction> raw;     // f^i = h_i term 2i+1
  std::vector<Dyadic> step_norms;    // ||f^i - f^{i+1}||_1
  std::vector<Dyadic> step_bounds;   // 2^-2i + 2^-i + 2^-2i
  std::vector<Dyadic> limit_norms;   // ||f^i - g||_1 when g is given
  std::vector<Dyadic> limit_bounds;  // 2^-2i + 2^-i+1
};

/// Diagonal of names h_j with ||h_j - h_{j+1}||_1 <= 2^-j. The premise is
/// refuted when the exact lower bound on ||h_j - h_{j+1}|| from the
/// materialized terms exceeds 2^-j. The step bound, and with a stationary g
/// the limit bound, are verified exactly; violations throw CertificateError.
DiagonalResult diagonal_name(const std::vector<L1Name>& hs, const std::optional<L1Name>& g = std::nullopt);

/// Index of the family member reached by stage s: sup over members below
/// rate(s) is within 2^-s of the full sup in L1.
using RateWitness = std::function<std::size_t(std::size_t)>;
using NameFamily = std::function<L1Name(std::size_t)>;

/// Name of sup_n of an infinite (or long) family with a convergence rate
/// witness; `stages` terms are produced. Stage s takes the pointwise max over
/// the first rate(s+3) members, each at a term index deep enough that the
/// truncation error is <= 2^-s-3. A false witness shows up as a failed
/// certificate (CertificateError).
L1Name sup_name(const NameFamily& family, const RateWitness& rate, std::size_t stages);
L1Name inf_name(const NameFamily& family, const RateWitness& rate, std::size_t stages);

/// Finite families. All-stationary families give the exact constant name of
/// the pointwise max/min of the limits; otherwise as many stages are produced
/// as the members' materialized terms allow.
L1Name sup_name(const std::vector<L1Name>& family);
L1Name inf_name(const std::vector<L1Name>& family);

}  // namespace cantor
