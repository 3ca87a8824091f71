#pragma once

// Small hand-built objectives shared by the unit and acceptance tests.

#include <vector>

#include "polysub/objective.hpp"
#include "polysub/problems.hpp"

namespace testsupport {

// f(x) = sum_i r_i x_i
inline polysub::CompositeObjective modular(const std::vector<double>& r) {
  polysub::MultilinearPoly g(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) g.add_term({polysub::positive_literal(static_cast<polysub::Index>(i))}, r[i]);
  return polysub::CompositeObjective(r.size(), {{1.0, polysub::AnalyticKernel::identity(), g}});
}

// f(x) = x0 + x1 - x0 x1 over N = 2
inline polysub::CompositeObjective coverage2() {
  polysub::MultilinearPoly g(2);
  g.add_term({polysub::positive_literal(0)}, 1.0);
  g.add_term({polysub::positive_literal(1)}, 1.0);
  g.add_term({polysub::positive_literal(0), polysub::positive_literal(1)}, -1.0);
  return polysub::CompositeObjective(2, {{1.0, polysub::AnalyticKernel::identity(), g}});
}

// Summarization with rewards (0.6, 0.4) in one similarity block, uniform k = 1.
inline polysub::Instance sm_toy() {
  polysub::SummarizationSpec spec;
  spec.rewards = {0.6, 0.4};
  spec.similarity = {{0, 1}};
  spec.matroid = polysub::PartitionMatroid::uniform(2, 1);
  return polysub::build_sm(spec);
}

}  // namespace testsupport
