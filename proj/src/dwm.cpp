#include "dol/dwm.hpp"

#include <cmath>
#include <stdexcept>

namespace dol {

int vote(std::span<const double> weights, std::span<const int> predictions) {
  double mass_plus = 0.0, mass_minus = 0.0;
  for (std::size_t p = 0; p < weights.size(); ++p) {
    (predictions[p] > 0 ? mass_plus : mass_minus) += weights[p];
  }
  return mass_plus >= mass_minus ? 1 : -1;
}

void penalize(std::span<double> weights, std::span<const int> predictions,
              int label, double alpha) {
  for (std::size_t p = 0; p < weights.size(); ++p) {
    if (predictions[p] != label) weights[p] *= alpha;
  }
}

void dwm_i_merge(const Matrix& penalized, const Topology& topo, Matrix& out,
                 const Executor& exec) {
  const int cols = penalized.cols();
  exec.for_each(penalized.rows(), [&](int i) {
    const std::vector<int>& nbhd = topo.neighborhood(i);
    std::span<double> dst = out.row(i);
    if (nbhd.size() == 1) {
      std::span<const double> src = penalized.row(i);
      for (int p = 0; p < cols; ++p) dst[p] = src[p];
      return;
    }
    const double inv = 1.0 / static_cast<double>(nbhd.size());
    for (int p = 0; p < cols; ++p) {
      double log_sum = 0.0;
      for (int j : nbhd) log_sum += std::log(penalized(j, p));
      dst[p] = std::exp(log_sum * inv);
    }
  });
}

void dwm_a_merge(const Matrix& penalized, const Topology& topo, Matrix& out,
                 const Executor& exec) {
  const int cols = penalized.cols();
  exec.for_each(penalized.rows(), [&](int i) {
    const std::vector<int>& nbhd = topo.neighborhood(i);
    std::span<double> dst = out.row(i);
    if (nbhd.size() == 1) {
      std::span<const double> src = penalized.row(i);
      for (int p = 0; p < cols; ++p) dst[p] = src[p];
      return;
    }
    const double inv = 1.0 / static_cast<double>(nbhd.size());
    for (int p = 0; p < cols; ++p) {
      double sum = 0.0;
      for (int j : nbhd) sum += penalized(j, p);
      dst[p] = sum * inv;
    }
  });
}

Matrix dwm_i_merge(const Matrix& penalized, const Topology& topo) {
  Matrix out(penalized.rows(), penalized.cols());
  dwm_i_merge(penalized, topo, out);
  return out;
}

Matrix dwm_a_merge(const Matrix& penalized, const Topology& topo) {
  Matrix out(penalized.rows(), penalized.cols());
  dwm_a_merge(penalized, topo, out);
  return out;
}

int rwm_choose(std::span<const double> weights, Rng& rng) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) {
      throw std::invalid_argument("rwm_choose: weights must be positive");
    }
    total += w;
  }
  const double u = uniform01(rng) * total;
  double cum = 0.0;
  for (std::size_t p = 0; p + 1 < weights.size(); ++p) {
    cum += weights[p];
    if (u < cum) return static_cast<int>(p);
  }
  return static_cast<int>(weights.size()) - 1;
}

DwmScratch DwmScratch::like(const Matrix& weights) {
  DwmScratch s;
  s.weights = Matrix(weights.rows(), weights.cols());
  s.expert_preds.assign(
      static_cast<std::size_t>(weights.rows()) * weights.cols(), 0);
  s.expert_wrong.assign(
      static_cast<std::size_t>(weights.rows()) * weights.cols(), 0);
  return s;
}

DwmRound dwm_round(Matrix& weights,
                   std::span<const LabeledExample* const> examples,
                   const DwmConfig& cfg, const Topology& topo,
                   std::span<Rng> agent_rngs, DwmScratch& scratch,
                   const Executor& exec) {
  const int n = weights.rows();
  const int n_experts = weights.cols();

  DwmRound round;
  round.predictions.resize(n);
  round.mistakes.resize(n);
  round.expert_mistakes.assign(n_experts, 0);

  // local phase: vote, suffer, penalize own row
  exec.for_each(n, [&](int i) {
    const LabeledExample& ex = *examples[i];
    std::span<int> preds(scratch.expert_preds.data() +
                             static_cast<std::size_t>(i) * n_experts,
                         static_cast<std::size_t>(n_experts));
    cfg.pool->predict_all(ex.features, preds);

    std::span<double> row = weights.row(i);
    const int y = cfg.randomized ? preds[rwm_choose(row, agent_rngs[i])]
                                 : vote(row, preds);
    round.predictions[i] = y;
    round.mistakes[i] = y != ex.label ? 1 : 0;
    std::uint8_t* wrong = scratch.expert_wrong.data() +
                          static_cast<std::size_t>(i) * n_experts;
    for (int p = 0; p < n_experts; ++p) {
      wrong[p] = preds[p] != ex.label ? 1 : 0;
    }
    penalize(row, preds, ex.label, cfg.alpha);
  });

  for (int i = 0; i < n; ++i) {
    const std::uint8_t* wrong = scratch.expert_wrong.data() +
                                static_cast<std::size_t>(i) * n_experts;
    for (int p = 0; p < n_experts; ++p) round.expert_mistakes[p] += wrong[p];
  }

  // communicate phase
  if (cfg.merge == DwmMerge::imitation) {
    dwm_i_merge(weights, topo, scratch.weights, exec);
  } else {
    dwm_a_merge(weights, topo, scratch.weights, exec);
  }
  std::swap(weights, scratch.weights);
  return round;
}

}  // namespace dol
