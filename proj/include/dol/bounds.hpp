#pragma once

#include <span>
#include <vector>

namespace dol {

// Inputs to the bound evaluators, measured by run instrumentation:
// m_star is the fewest total mistakes of any single expert summed over
// all agents and rounds; m_star_series holds the per-round minima (each
// in [0, N]). diam_bound caps the divergence between any two parameter
// vectors seen by a run, grad_bound the dual norm of any subgradient, and
// strong_convexity the modulus of the distance generator.
struct BoundInputs {
  long long m_star = 0;
  std::vector<int> m_star_series;
  int n_agents = 1;
  int n_experts = 1;
  double alpha = 0.9;
  double diam_bound = 0.0;
  double grad_bound = 0.0;
  double strong_convexity = 1.0;
  long long horizon = 0;
};

// Throws std::invalid_argument when the inputs are inconsistent
// (alpha outside (0,1), some m*_t > N, or sum_t m*_t > m*).
void validate(const BoundInputs& inputs);

// Mistake cap for one agent under the geometric (imitation) merge:
// ( (m*/N) ln(1/alpha) + ln P ) / ln(2/(1+alpha)).
// Every logarithm in these evaluators is natural.
double dwm_i_bound(double m_star, int n_agents, int n_experts, double alpha);

// Cap on the total mistakes over all agents:
// ( m* ln(1/alpha) + N ln P ) / ln(2/(1+alpha)).
double dwm_social_bound(double m_star, int n_agents, int n_experts,
                        double alpha);

// Refined per-agent cap under the arithmetic (averaging) merge, driven by
// the per-round best-expert mistake counts:
// ( sum_t (1-alpha) m*_t / (N - (1-alpha) m*_t) + ln P ) / ln(2/(1+alpha)).
double dwm_a_bound(std::span<const int> m_star_series, int n_agents,
                   int n_experts, double alpha);

// Per-round threshold N(1/(1-alpha) - 1/ln(1/alpha)); below it the
// averaging-merge cap beats the imitation-merge cap when alpha < 1/2.
// Throws for alpha outside (0, 1/2).
double dwm_a_condition(double alpha, int n_agents);

// Average individual regret cap:
// D sqrt(T) + 1/(2 a N^2) * sum_t (1/sqrt(t)) |sum_j g_j^t|_*^2,
// with one aggregated-subgradient dual norm per round (T = series
// length). The caller picks the dual norm matching the divergence: l2 for
// squared Euclidean, l-infinity for entropy.
double domd_avg_regret_bound(double diam_bound, double strong_convexity,
                             std::span<const double> aggregate_dual_norms,
                             int n_agents);

}  // namespace dol
