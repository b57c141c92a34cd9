#include "cantor/gdelta.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "cantor/errors.hpp"

namespace cantor {

struct RapidGDelta::Cache {
  LevelFn fn;
  std::mutex mu;
  std::map<std::size_t, StagedOpenSet> levels;
};

RapidGDelta::RapidGDelta(std::string name, LevelFn levels)
    : name_(std::move(name)), cache_(std::make_shared<Cache>()) {
  cache_->fn = std::move(levels);
}

RapidGDelta RapidGDelta::empty(std::string name) {
  return RapidGDelta(std::move(name), [](std::size_t) { return StagedOpenSet(); });
}

RapidGDelta RapidGDelta::from_stages(std::string name, std::vector<std::vector<ClopenSet>> levels) {
  auto shared = std::make_shared<const std::vector<std::vector<ClopenSet>>>(std::move(levels));
  return RapidGDelta(std::move(name), [shared](std::size_t n) {
    if (n >= shared->size()) return StagedOpenSet();
    return StagedOpenSet::from_stages((*shared)[n]);
  });
}

StagedOpenSet RapidGDelta::level(std::size_t n) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto it = cache_->levels.find(n);
  if (it == cache_->levels.end()) it = cache_->levels.emplace(n, cache_->fn(n)).first;
  return it->second;
}

ClopenSet RapidGDelta::unchecked_stage(std::size_t level, std::size_t s) const { return this->level(level).stage(s); }

ClopenSet RapidGDelta::stage(std::size_t level, std::size_t s) const {
  ClopenSet out = unchecked_stage(level, s);
  const Dyadic m = mu_I(out);
  if (m > Dyadic::pow2_neg(static_cast<std::uint32_t>(level))) {
    throw CertificateError("test '" + name_ + "' level " + std::to_string(level) + " stage " + std::to_string(s) +
                           " has measure " + m.str() + " > 1/2^" + std::to_string(level));
  }
  return out;
}

RapidGDelta combine(const std::vector<RapidGDelta>& tests, std::string name, std::optional<std::size_t> bound) {
  auto inputs = std::make_shared<const std::vector<RapidGDelta>>(tests);
  return RapidGDelta(std::move(name), [inputs, bound](std::size_t j) {
    return StagedOpenSet(
        [inputs, bound, j](std::size_t s) {
          if (inputs->empty()) return ClopenSet();
          std::size_t top = std::min(s, inputs->size() - 1);
          if (bound) top = std::min(top, *bound);
          std::vector<ClopenSet> parts;
          for (std::size_t n = 0; n <= top; ++n) parts.push_back((*inputs)[n].stage(n + j + 1, s));
          return set_union(parts);
        },
        Dyadic::pow2_neg(static_cast<std::uint32_t>(j)));
  });
}

Avoidance avoids(const Point& x, const RapidGDelta& t, std::size_t level, std::size_t stage) {
  const ClopenSet s = t.stage(level, stage);
  for (const auto& g : s.generators()) {
    bool in = true;
    for (std::size_t i = 0; i < g.size() && in; ++i) in = x.bit(i) == g[i];
    if (in) return Avoidance{true, level, g};
  }
  return Avoidance{false, level, Bits()};
}

Dyadic budget_report(const RapidGDelta& t, std::size_t level, std::size_t stage) {
  return mu_I(t.stage(level, stage));
}

namespace {

template <class Source>
RapidGDelta convergence_from(const Source& src, std::string name) {
  auto bad = std::make_shared<std::map<std::size_t, StagedOpenSet>>();
  auto mu = std::make_shared<std::mutex>();
  auto get = [src, bad, mu](std::size_t n) {
    std::lock_guard<std::mutex> lock(*mu);
    auto it = bad->find(n);
    if (it == bad->end()) it = bad->emplace(n, bad_set(src, n)).first;
    return it->second;
  };
  return RapidGDelta(std::move(name), [get](std::size_t k) {
    return StagedOpenSet(
        [get, k](std::size_t s) {
          std::vector<ClopenSet> parts;
          for (std::size_t n = k + 1; n <= k + 1 + s; ++n) parts.push_back(get(n).stage(s));
          return set_union(parts);
        },
        Dyadic::pow2_neg(static_cast<std::uint32_t>(k)));
  });
}

}  // namespace

RapidGDelta convergence_test(const L1Name& n, std::string name) { return convergence_from(n, std::move(name)); }

RapidGDelta convergence_test(const TermSequence& seq, std::string name) {
  return convergence_from(seq, std::move(name));
}

RapidGDelta agreement_test(const L1Name& f, const L1Name& g, std::string name) {
  return combine({convergence_test(f, name + "/f"), convergence_test(g, name + "/g"),
                  convergence_test(interleave(f, g), name + "/interleaved")},
                 name);
}

RapidGDelta diagonal_test(const std::vector<L1Name>& hs, const L1Name& g, std::string name) {
  const DiagonalResult diag = diagonal_name(hs, g);
  auto members = std::make_shared<const std::vector<L1Name>>(hs);
  RapidGDelta c_family(name + "/C", [members](std::size_t k) {
    return StagedOpenSet(
        [members, k](std::size_t s) {
          std::vector<ClopenSet> parts;
          const std::size_t top = std::min(k + 1 + s, members->size() - 1);
          for (std::size_t j = k + 1; j <= top; ++j) {
            for (std::size_t n = j + 1; n <= j + 1 + s; ++n) parts.push_back(bad_set((*members)[j], n).stage(s));
          }
          return set_union(parts);
        },
        Dyadic::pow2_neg(static_cast<std::uint32_t>(k)));
  });
  return combine({convergence_test(diag.name, name + "/diagonal"), agreement_test(diag.name, g, name + "/limit"),
                  std::move(c_family)},
                 name);
}

}  // namespace cantor
