#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dol/agent_state.hpp"

namespace dol {

// Everything a run records. Per-round-per-agent series are laid out
// round-major: slot(t, i) = t * n_agents + i. Cumulative series are
// prefix sums of the per-round ones and can be recomputed from them.
struct Metrics {
  int n_agents = 0;
  long long rounds = 0;

  std::vector<std::int8_t> prediction;  // +1/-1
  std::vector<std::uint8_t> mistake;
  std::vector<double> loss;
  std::vector<long long> cum_mistakes;
  std::vector<double> cum_loss;

  // weighted-majority instrumentation. The "best expert" is the one with
  // the fewest total mistakes over all agents and rounds (smallest index
  // on ties); its per-round counts sum exactly to best_expert_total. The
  // round-min series takes the minimum over experts independently at each
  // round, so its sum can only be smaller.
  std::vector<int> best_expert_round_mistakes;   // fixed best expert, per round
  std::vector<int> round_min_expert_mistakes;    // min over experts, per round
  std::vector<long long> expert_total_mistakes;  // per expert, all agents/rounds
  long long best_expert_total = 0;               // min over experts

  // mirror-descent instrumentation
  std::vector<double> aggregate_grad_l2;    // |sum_j g_j^t|_2 per round
  std::vector<double> aggregate_grad_linf;  // |sum_j g_j^t|_inf per round
  std::vector<double> consensus_gap;        // max pairwise l-inf parameter gap
  double max_pairwise_divergence = 0.0;     // psi between agent iterates
  double max_comparator_divergence = 0.0;   // psi(iterate, comparator)
  std::vector<double> comparator_cum_loss;  // per agent

  std::vector<AgentState> final_states;

  std::size_t slot(long long t, int i) const {
    return static_cast<std::size_t>(t) * n_agents + i;
  }
  long long final_mistakes(int i) const {
    return rounds == 0 ? 0 : cum_mistakes[slot(rounds - 1, i)];
  }
  double final_loss(int i) const {
    return rounds == 0 ? 0.0 : cum_loss[slot(rounds - 1, i)];
  }
};

struct ReplayReport {
  bool ok = true;
  std::string diagnostics;  // empty when ok
};

// Self-consistency audit: cumulative series must equal prefix sums of the
// per-round series, every per-round best-expert count must lie in [0, N],
// and their sum must not exceed the best expert's total.
ReplayReport replay_check(const Metrics& m);

}  // namespace dol
