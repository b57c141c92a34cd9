#include "cantor/l1_name.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

constexpr std::size_t kInterleaveHorizon = 64;

Dyadic pow2(std::int64_t e) { return Dyadic(1).shifted(e); }

std::size_t ceil_log2(std::size_t n) {
  std::size_t c = 0;
  while ((std::size_t{1} << c) < n) ++c;
  return c;
}

}  // namespace

TermSequence::TermSequence(std::vector<StepFunction> terms, bool stationary)
    : terms_(std::move(terms)), stationary_(stationary) {
  if (terms_.empty()) throw ValidationError("a term sequence needs at least one term");
}

const StepFunction& TermSequence::at(std::size_t i) const {
  if (i < terms_.size()) return terms_[i];
  if (stationary_ && !terms_.empty()) return terms_.back();
  throw ValidationError("term " + std::to_string(i) + " requested but only " + std::to_string(terms_.size()) +
                        " are materialized");
}

L1Name L1Name::constant(const StepFunction& f) { return L1Name(TermSequence({f}, true), {}); }

std::optional<StepFunction> L1Name::limit() const {
  if (!stationary()) return std::nullopt;
  return seq_.terms().back();
}

L1Name certify_rapid_cauchy(std::vector<StepFunction> seq, bool stationary) {
  std::vector<Dyadic> norms;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    Dyadic d = l1_norm(seq[i], seq[i + 1]);
    if (!(d < Dyadic::pow2_neg(static_cast<std::uint32_t>(i)))) {
      throw CertificateError("not rapidly Cauchy at index " + std::to_string(i) + ": ||f_" + std::to_string(i) +
                             " - f_" + std::to_string(i + 1) + "||_1 = " + d.str() + ", needs < 1/2^" +
                             std::to_string(i));
    }
    norms.push_back(std::move(d));
  }
  return L1Name(TermSequence(std::move(seq), stationary), std::move(norms));
}

DyadicInterval integral(const L1Name& n) {
  const std::size_t i = n.last_index();
  const Dyadic mid = n.term(i).integral();
  const Dyadic tail = pow2(1 - static_cast<std::int64_t>(i));
  return DyadicInterval(mid - tail, mid + tail);
}

std::optional<Dyadic> limit_integral(const L1Name& n) {
  if (!n.stationary()) return std::nullopt;
  return n.sequence().terms().back().integral();
}

// ---------------------------------------------------------------------------

namespace {

/// Partial sums sum_{i=start}^{start+k} |f_i - f_{i+1}|, grown on demand.
class PartialSums {
 public:
  PartialSums(TermSequence seq, std::size_t level) : seq_(std::move(seq)), level_(level) {}

  ClopenSet stage(std::size_t n) {
    const std::size_t start = 2 * level_ + 1;
    const std::size_t count = seq_.difference_count();
    if (count == 0) return {};
    const std::size_t last = std::min(n, count - 1);
    if (last < start) return {};
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = done_.find(last); it != done_.end()) return it->second;
    while (sums_.size() <= last - start) {
      const std::size_t i = start + sums_.size();
      StepFunction d = abs(seq_.at(i) - seq_.at(i + 1));
      sums_.push_back(sums_.empty() ? d : sums_.back() + d);
    }
    const Dyadic threshold = Dyadic::pow2_neg(static_cast<std::uint32_t>(level_));
    ClopenSet out = sums_[last - start].where([&](const Dyadic& v) { return v > threshold; });
    done_.emplace(last, out);
    return out;
  }

 private:
  TermSequence seq_;
  std::size_t level_;
  std::mutex mu_;
  std::vector<StepFunction> sums_;
  std::map<std::size_t, ClopenSet> done_;
};

}  // namespace

ClopenSet bad_set_stage(const TermSequence& seq, std::size_t level, std::size_t stage) {
  PartialSums sums(seq, level);
  return sums.stage(stage);
}

StagedOpenSet bad_set(const TermSequence& seq, std::size_t level) {
  auto sums = std::make_shared<PartialSums>(seq, level);
  return StagedOpenSet([sums](std::size_t s) { return sums->stage(s); },
                       Dyadic::pow2_neg(static_cast<std::uint32_t>(level)));
}

StagedOpenSet bad_set(const L1Name& n, std::size_t level) {
  auto sums = std::make_shared<PartialSums>(n.sequence(), level);
  return StagedOpenSet(
      [sums, level](std::size_t s) {
        ClopenSet out = sums->stage(s);
        const Dyadic m = mu_I(out);
        if (m > Dyadic::pow2_neg(static_cast<std::uint32_t>(level))) {
          throw CertificateError("bad set A_" + std::to_string(level) + " stage " + std::to_string(s) +
                                 " has measure " + m.str() + " above its budget");
        }
        return out;
      },
      Dyadic::pow2_neg(static_cast<std::uint32_t>(level)));
}

// ---------------------------------------------------------------------------

PointEvaluator::PointEvaluator(const L1Name& n, std::size_t precision, std::size_t avoid_level)
    : name_(&n), m_(2 * std::max(precision, avoid_level) + 1), k_(avoid_level) {
  (void)n.term(m_);  // fail early when the name is too short
  const std::size_t count = n.sequence().difference_count();
  for (std::size_t j = k_; count > 0 && 2 * j + 1 <= count - 1; ++j) {
    bad_.push_back(bad_set_stage(n.sequence(), j, count - 1));
  }
}

PointValue PointEvaluator::operator()(const Point& x) const {
  for (std::size_t j = 0; j < bad_.size(); ++j) {
    if (bad_[j].contains(x)) return Captured{k_ + j};
  }
  return name_->term(m_).value(x);
}

PointValue value_at(const L1Name& n, const Point& x, std::size_t precision, std::size_t avoid_level) {
  return PointEvaluator(n, precision, avoid_level)(x);
}

// ---------------------------------------------------------------------------

NameComparison names_equal(const L1Name& a, const L1Name& b, std::optional<std::size_t> bound) {
  std::size_t i = 0;
  if (bound) {
    i = *bound;
  } else if (a.stationary() && b.stationary()) {
    i = std::max(a.last_index(), b.last_index());
  } else if (a.stationary()) {
    i = b.last_index();
  } else if (b.stationary()) {
    i = a.last_index();
  } else {
    i = std::min(a.last_index(), b.last_index());
  }
  Dyadic residual = l1_norm(a.term(i), b.term(i));
  const bool exact = a.stationary() && b.stationary() && i >= a.last_index() && i >= b.last_index();
  Dyadic tolerance = exact ? Dyadic(0) : pow2(2 - static_cast<std::int64_t>(i));
  const bool equal = residual <= tolerance;
  return NameComparison{equal, std::move(residual), i, std::move(tolerance)};
}

TermSequence interleave(const L1Name& f, const L1Name& g) {
  std::vector<StepFunction> out;
  const bool both = f.stationary() && g.stationary();
  const bool same = both && f.limit() == g.limit();
  // Two different limits alternate forever; materialize enough of that for deep bad sets.
  const std::size_t settle = std::max(f.last_index(), g.last_index()) + 2 + (same ? 0 : kInterleaveHorizon);
  for (std::size_t k = 0;; ++k) {
    const L1Name& src = k % 2 == 0 ? f : g;
    if (!src.sequence().has(k + 2)) break;
    if (both && k > settle) break;
    out.push_back(src.term(k + 2));
  }
  if (out.empty()) throw ValidationError("interleave needs terms 2 and 3 of the names");
  return TermSequence(std::move(out), same);
}

// ---------------------------------------------------------------------------

DiagonalResult diagonal_name(const std::vector<L1Name>& hs, const std::optional<L1Name>& g) {
  if (hs.size() < 3) throw ValidationError("diagonal_name needs at least three names");
  // Premise: ||h_j - h_{j+1}|| <= 2^-j, refuted from the exact lower bound.
  for (std::size_t j = 0; j + 1 < hs.size(); ++j) {
    const NameComparison c = names_equal(hs[j], hs[j + 1]);
    const Dyadic lower = c.residual - c.tolerance;
    if (lower > Dyadic::pow2_neg(static_cast<std::uint32_t>(j))) {
      throw CertificateError("diagonal premise refuted at j = " + std::to_string(j) + ": ||h_j - h_{j+1}||_1 >= " +
                             lower.str() + " > 1/2^" + std::to_string(j));
    }
  }
  std::vector<StepFunction> raw;
  for (std::size_t i = 0; i < hs.size(); ++i) raw.push_back(hs[i].term(2 * i + 1));

  std::vector<Dyadic> step_norms;
  std::vector<Dyadic> step_bounds;
  for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
    const auto ii = static_cast<std::int64_t>(i);
    Dyadic bound = pow2(-2 * ii) + pow2(-ii) + pow2(-2 * ii);
    Dyadic d = l1_norm(raw[i], raw[i + 1]);
    if (d > bound) {
      throw CertificateError("diagonal step bound fails at i = " + std::to_string(i) + ": " + d.str() + " > " +
                             bound.str());
    }
    step_norms.push_back(std::move(d));
    step_bounds.push_back(std::move(bound));
  }

  std::vector<Dyadic> limit_norms;
  std::vector<Dyadic> limit_bounds;
  if (g) {
    const std::size_t t = g->last_index();
    const StepFunction& gt = g->term(t);
    const Dyadic slack = g->stationary() ? Dyadic(0) : pow2(1 - static_cast<std::int64_t>(t));
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const auto ii = static_cast<std::int64_t>(i);
      Dyadic bound = pow2(-2 * ii) + pow2(1 - ii);
      Dyadic d = l1_norm(raw[i], gt);
      if (d - slack > bound) {
        throw CertificateError("diagonal limit bound fails at i = " + std::to_string(i) + ": " + d.str() + " > " +
                               bound.str());
      }
      limit_norms.push_back(std::move(d));
      limit_bounds.push_back(std::move(bound));
    }
  }

  std::vector<StepFunction> shifted(raw.begin() + 2, raw.end());
  L1Name name = certify_rapid_cauchy(std::move(shifted));
  return DiagonalResult{std::move(name),        std::move(raw),         std::move(step_norms),
                        std::move(step_bounds), std::move(limit_norms), std::move(limit_bounds)};
}

namespace {

L1Name extremum_name(const NameFamily& family, const RateWitness& rate, std::size_t stages, bool take_max) {
  std::vector<L1Name> members;
  auto member = [&](std::size_t n) -> const L1Name& {
    while (members.size() <= n) members.push_back(family(members.size()));
    return members[n];
  };
  std::vector<StepFunction> terms;
  for (std::size_t s = 0; s < stages; ++s) {
    const std::size_t count = std::max<std::size_t>(1, rate(s + 3));
    const std::size_t m = s + 4 + ceil_log2(count);
    StepFunction t = member(0).term(m);
    for (std::size_t n = 1; n < count; ++n) {
      t = take_max ? pointwise_max(t, member(n).term(m)) : pointwise_min(t, member(n).term(m));
    }
    terms.push_back(std::move(t));
  }
  try {
    return certify_rapid_cauchy(std::move(terms));
  } catch (const CertificateError& e) {
    throw CertificateError(std::string("rate witness falsified: ") + e.what());
  }
}

L1Name finite_extremum(const std::vector<L1Name>& family, bool take_max) {
  if (family.empty()) return L1Name::constant(StepFunction::constant(Dyadic(take_max ? 0 : 1)));
  const bool all_stationary =
      std::all_of(family.begin(), family.end(), [](const L1Name& n) { return n.stationary(); });
  if (all_stationary) {
    StepFunction t = *family[0].limit();
    for (std::size_t n = 1; n < family.size(); ++n) {
      t = take_max ? pointwise_max(t, *family[n].limit()) : pointwise_min(t, *family[n].limit());
    }
    return L1Name::constant(t);
  }
  std::size_t reach = SIZE_MAX;
  for (const auto& n : family) {
    if (!n.stationary()) reach = std::min(reach, n.last_index());
  }
  const std::size_t offset = 4 + ceil_log2(family.size());
  if (reach < offset) {
    throw ValidationError("family members are too short for a sup/inf name (need term " + std::to_string(offset) +
                          ")");
  }
  return extremum_name([&](std::size_t n) { return family[n]; }, [&](std::size_t) { return family.size(); },
                       reach - offset + 1, take_max);
}

}  // namespace

L1Name sup_name(const NameFamily& family, const RateWitness& rate, std::size_t stages) {
  return extremum_name(family, rate, stages, true);
}

L1Name inf_name(const NameFamily& family, const RateWitness& rate, std::size_t stages) {
  return extremum_name(family, rate, stages, false);
}

L1Name sup_name(const std::vector<L1Name>& family) { return finite_extremum(family, true); }
L1Name inf_name(const std::vector<L1Name>& family) { return finite_extremum(family, false); }

}  // namespace cantor
