#include "cantor/open_set.hpp"

#include <algorithm>
#include <memory>

namespace cantor {

StagedOpenSet StagedOpenSet::constant(ClopenSet s) {
  return StagedOpenSet([s = std::move(s)](std::size_t) { return s; });
}

StagedOpenSet StagedOpenSet::from_stages(std::vector<ClopenSet> stages) {
  if (stages.empty()) return StagedOpenSet();
  auto shared = std::make_shared<const std::vector<ClopenSet>>(std::move(stages));
  return StagedOpenSet([shared](std::size_t s) { return (*shared)[std::min(s, shared->size() - 1)]; });
}

bool StagedOpenSet::check_monotone(std::size_t upto) const {
  ClopenSet prev = stage(0);
  for (std::size_t s = 1; s <= upto; ++s) {
    ClopenSet next = stage(s);
    if (!is_subset(prev, next)) return false;
    prev = std::move(next);
  }
  return true;
}

}  // namespace cantor
