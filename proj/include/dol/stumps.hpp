#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dol/dataset.hpp"
#include "dol/sparse_vector.hpp"

namespace dol {

// Single-feature threshold classifier: predicts `polarity` when the
// feature at dim_index is >= threshold, -polarity otherwise.
struct DecisionStump {
  int dim_index = 0;
  double threshold = 0.0;
  int polarity = 1;  // +1 or -1

  bool operator==(const DecisionStump&) const = default;
};

int stump_predict(const DecisionStump& s, const SparseVector& x);

// Fixed pool of stumps shared by every agent. Dimension indices are
// pairwise distinct.
struct ExpertPool {
  std::vector<DecisionStump> stumps;

  int size() const { return static_cast<int>(stumps.size()); }
  void predict_all(const SparseVector& x, std::span<int> out) const;

  bool operator==(const ExpertPool&) const = default;
};

// Offline pool training. Picks n_experts distinct dimensions uniformly at
// random (constant dimensions are resampled), places `probes` candidate
// thresholds evenly between the min and max of each chosen dimension
// (endpoints included), and keeps the (threshold, polarity) pair with the
// lowest training error over the whole dataset. Ties go to the smaller
// threshold, then to polarity +1. Throws if the dataset has a single
// class, if probes < 2, or if fewer than n_experts non-constant
// dimensions exist.
ExpertPool train_stumps(const Dataset& d, int n_experts, int probes = 200,
                        std::uint64_t seed = 0);

// Training error of one stump over a dataset (mistake fraction).
double stump_training_error(const DecisionStump& s, const Dataset& d);

std::string pool_to_json(const ExpertPool& pool);
ExpertPool pool_from_json(const std::string& text);

}  // namespace dol
