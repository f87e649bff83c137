#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dol/executor.hpp"
#include "dol/matrix.hpp"
#include "dol/rng.hpp"
#include "dol/sparse_vector.hpp"
#include "dol/stumps.hpp"
#include "dol/topology.hpp"

namespace dol {

// How agents fold neighbor weights in after the local penalty step.
enum class DwmMerge {
  imitation,  // entrywise geometric mean over the neighborhood
  averaging,  // entrywise arithmetic mean over the neighborhood
};

struct DwmConfig {
  double alpha = 0.9;  // multiplicative penalty, in (0,1)
  int n_agents = 1;
  const ExpertPool* pool = nullptr;
  DwmMerge merge = DwmMerge::imitation;
  bool randomized = false;  // sample one expert instead of voting
  std::uint64_t seed = 0;
};

// Weighted vote over expert predictions; ties go to +1.
int vote(std::span<const double> weights, std::span<const int> predictions);

// Multiplies the weight of every mistaken expert by alpha, in place.
void penalize(std::span<double> weights, std::span<const int> predictions,
              int label, double alpha);

// Entrywise geometric mean of the penalized weights over each agent's
// neighborhood (computed in log space; a singleton neighborhood is an
// exact copy). On a complete graph all rows come out identical.
void dwm_i_merge(const Matrix& penalized, const Topology& topo, Matrix& out,
                 const Executor& exec = Executor::sequential());
Matrix dwm_i_merge(const Matrix& penalized, const Topology& topo);

// Entrywise arithmetic mean over each agent's neighborhood, fixed
// ascending operand order.
void dwm_a_merge(const Matrix& penalized, const Topology& topo, Matrix& out,
                 const Executor& exec = Executor::sequential());
Matrix dwm_a_merge(const Matrix& penalized, const Topology& topo);

// Samples expert p with probability w_p / sum(w).
int rwm_choose(std::span<const double> weights, Rng& rng);

struct DwmRound {
  std::vector<int> predictions;        // per agent, +1/-1
  std::vector<std::uint8_t> mistakes;  // per agent
  std::vector<int> expert_mistakes;    // per expert: # agents it failed
};

// Reusable per-round buffers (expert predictions and mistake flags, one
// row per agent).
struct DwmScratch {
  Matrix weights;
  std::vector<int> expert_preds;
  std::vector<std::uint8_t> expert_wrong;

  static DwmScratch like(const Matrix& weights);
};

// One synchronous round: every agent votes with its current weights (or
// samples an expert when randomized), suffers its mistake, penalizes its
// own row, then all rows are merged per cfg.merge. `weights` is updated
// in place; `examples` holds one example per agent. `agent_rngs` is only
// read when cfg.randomized is set and must then hold one generator per
// agent. The per-agent phase may run on the executor's threads; results
// are identical to sequential execution.
DwmRound dwm_round(Matrix& weights,
                   std::span<const LabeledExample* const> examples,
                   const DwmConfig& cfg, const Topology& topo,
                   std::span<Rng> agent_rngs, DwmScratch& scratch,
                   const Executor& exec = Executor::sequential());

}  // namespace dol
