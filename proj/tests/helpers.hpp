#pragma once

#include <cstring>
#include <span>
#include <vector>

#include "dol/dataset.hpp"
#include "dol/matrix.hpp"
#include "dol/metrics.hpp"
#include "dol/sparse_vector.hpp"

namespace dol::testing {

// Bitwise equality, distinguishing -0.0/NaN payloads; regular == would not.
inline bool bits_equal(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() &&
         (a.empty() ||
          std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

inline bool bits_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         bits_equal(std::span<const double>(a.data()),
                    std::span<const double>(b.data()));
}

inline bool metrics_equal(const Metrics& a, const Metrics& b) {
  return a.n_agents == b.n_agents && a.rounds == b.rounds &&
         a.prediction == b.prediction && a.mistake == b.mistake &&
         bits_equal(a.loss, b.loss) && a.cum_mistakes == b.cum_mistakes &&
         bits_equal(a.cum_loss, b.cum_loss) &&
         a.best_expert_round_mistakes == b.best_expert_round_mistakes &&
         a.round_min_expert_mistakes == b.round_min_expert_mistakes &&
         a.expert_total_mistakes == b.expert_total_mistakes &&
         a.best_expert_total == b.best_expert_total &&
         bits_equal(a.aggregate_grad_l2, b.aggregate_grad_l2) &&
         bits_equal(a.aggregate_grad_linf, b.aggregate_grad_linf) &&
         bits_equal(a.consensus_gap, b.consensus_gap) &&
         a.max_pairwise_divergence == b.max_pairwise_divergence &&
         a.max_comparator_divergence == b.max_comparator_divergence &&
         bits_equal(a.comparator_cum_loss, b.comparator_cum_loss);
}

// Dense point as a sparse example.
inline LabeledExample example(std::vector<double> values, int label) {
  std::vector<SparseVector::Entry> entries;
  for (std::size_t d = 0; d < values.size(); ++d) {
    if (values[d] != 0.0) entries.push_back({static_cast<int>(d), values[d]});
  }
  return {SparseVector(std::move(entries), static_cast<int>(values.size())),
          label};
}

}  // namespace dol::testing
