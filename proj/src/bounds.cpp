#include "dol/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dol {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha must be in (0,1), got " +
                                std::to_string(alpha));
  }
}

void check_counts(int n_agents, int n_experts) {
  if (n_agents < 1) throw std::invalid_argument("n_agents must be >= 1");
  if (n_experts < 1) throw std::invalid_argument("n_experts must be >= 1");
}

}  // namespace

void validate(const BoundInputs& inputs) {
  check_alpha(inputs.alpha);
  check_counts(inputs.n_agents, inputs.n_experts);
  if (inputs.m_star < 0) {
    throw std::invalid_argument("m_star must be non-negative");
  }
  long long series_sum = 0;
  for (int m : inputs.m_star_series) {
    if (m < 0 || m > inputs.n_agents) {
      throw std::invalid_argument("per-round best-expert mistakes must lie in [0, N]");
    }
    series_sum += m;
  }
  if (!inputs.m_star_series.empty() && series_sum > inputs.m_star) {
    throw std::invalid_argument(
        "sum of per-round best-expert mistakes exceeds m_star");
  }
  if (!(inputs.strong_convexity > 0.0)) {
    throw std::invalid_argument("strong_convexity must be positive");
  }
}

double dwm_i_bound(double m_star, int n_agents, int n_experts, double alpha) {
  check_alpha(alpha);
  check_counts(n_agents, n_experts);
  const double scale = std::log(2.0 / (1.0 + alpha));
  return (m_star / n_agents * std::log(1.0 / alpha) + std::log(n_experts)) /
         scale;
}

double dwm_social_bound(double m_star, int n_agents, int n_experts,
                        double alpha) {
  check_alpha(alpha);
  check_counts(n_agents, n_experts);
  const double scale = std::log(2.0 / (1.0 + alpha));
  return (m_star * std::log(1.0 / alpha) + n_agents * std::log(n_experts)) /
         scale;
}

double dwm_a_bound(std::span<const int> m_star_series, int n_agents,
                   int n_experts, double alpha) {
  check_alpha(alpha);
  check_counts(n_agents, n_experts);
  double sum = 0.0;
  for (int m : m_star_series) {
    if (m < 0 || m > n_agents) {
      throw std::invalid_argument(
          "dwm_a_bound: per-round count must lie in [0, N], got " +
          std::to_string(m));
    }
    // (1-alpha) m < N holds because m <= N and alpha > 0
    sum += (1.0 - alpha) * m / (n_agents - (1.0 - alpha) * m);
  }
  return (sum + std::log(n_experts)) / std::log(2.0 / (1.0 + alpha));
}

double dwm_a_condition(double alpha, int n_agents) {
  if (!(alpha > 0.0) || !(alpha < 0.5)) {
    throw std::invalid_argument(
        "dwm_a_condition applies for alpha in (0, 1/2), got " +
        std::to_string(alpha));
  }
  if (n_agents < 1) throw std::invalid_argument("n_agents must be >= 1");
  return n_agents * (1.0 / (1.0 - alpha) - 1.0 / std::log(1.0 / alpha));
}

double domd_avg_regret_bound(double diam_bound, double strong_convexity,
                             std::span<const double> aggregate_dual_norms,
                             int n_agents) {
  if (n_agents < 1) throw std::invalid_argument("n_agents must be >= 1");
  if (!(strong_convexity > 0.0)) {
    throw std::invalid_argument("strong_convexity must be positive");
  }
  const double T = static_cast<double>(aggregate_dual_norms.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < aggregate_dual_norms.size(); ++t) {
    const double norm = aggregate_dual_norms[t];
    sum += norm * norm / std::sqrt(static_cast<double>(t + 1));
  }
  return diam_bound * std::sqrt(T) +
         sum / (2.0 * strong_convexity * n_agents * n_agents);
}

}  // namespace dol
