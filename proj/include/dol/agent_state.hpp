#pragma once

#include <vector>

namespace dol {

// Per-agent bundle: the parameter vector plus cumulative accounting.
// `params` holds expert weights (length P) for the weighted-majority
// family, model weights (length D) for gradient descent, or the stacked
// positive/negative pair (length 2D) for the exponentiated variant.
// Owned by exactly one logical agent between synchronization points.
struct AgentState {
  int id = 0;
  std::vector<double> params;
  long long cumulative_mistakes = 0;
  double cumulative_loss = 0.0;
};

}  // namespace dol
