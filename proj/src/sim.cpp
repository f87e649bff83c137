#include "dol/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <thread>

#include "dol/executor.hpp"
#include "dol/matrix.hpp"
#include "dol/rng.hpp"

namespace dol {

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "wma") return Algorithm::wma;
  if (name == "rwm") return Algorithm::rwm;
  if (name == "dwm-i") return Algorithm::dwm_i;
  if (name == "dwm-a") return Algorithm::dwm_a;
  if (name == "drwm") return Algorithm::drwm;
  if (name == "ogd") return Algorithm::ogd;
  if (name == "eg") return Algorithm::eg;
  if (name == "dogd") return Algorithm::dogd;
  if (name == "doeg") return Algorithm::doeg;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::wma: return "wma";
    case Algorithm::rwm: return "rwm";
    case Algorithm::dwm_i: return "dwm-i";
    case Algorithm::dwm_a: return "dwm-a";
    case Algorithm::drwm: return "drwm";
    case Algorithm::ogd: return "ogd";
    case Algorithm::eg: return "eg";
    case Algorithm::dogd: return "dogd";
    case Algorithm::doeg: return "doeg";
  }
  return "?";
}

bool is_weighted_majority(Algorithm a) {
  switch (a) {
    case Algorithm::wma:
    case Algorithm::rwm:
    case Algorithm::dwm_i:
    case Algorithm::dwm_a:
    case Algorithm::drwm:
      return true;
    default:
      return false;
  }
}

bool is_mirror_descent(Algorithm a) { return !is_weighted_majority(a); }

bool is_single_agent(Algorithm a) {
  return a == Algorithm::wma || a == Algorithm::rwm || a == Algorithm::ogd ||
         a == Algorithm::eg;
}

namespace {

void validate_common(const ExperimentSpec& spec) {
  const int n = spec.topology.n_agents();
  if (static_cast<int>(spec.streams.size()) != n) {
    throw std::invalid_argument("run: expected " + std::to_string(n) +
                                " streams, got " +
                                std::to_string(spec.streams.size()));
  }
  if (spec.rounds < 1) {
    throw std::invalid_argument("run: rounds must be >= 1");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<long long>(spec.streams[i].size()) < spec.rounds) {
      throw std::invalid_argument(
          "run: stream for agent " + std::to_string(i) + " has " +
          std::to_string(spec.streams[i].size()) + " examples, need " +
          std::to_string(spec.rounds));
    }
  }
  if (is_single_agent(spec.algorithm) && n != 1) {
    throw std::invalid_argument("run: " + algorithm_name(spec.algorithm) +
                                " is single-agent; got " + std::to_string(n) +
                                " agents");
  }
}

Executor make_executor(const ExperimentSpec& spec) {
  if (!spec.parallel) return Executor::sequential();
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return Executor(std::min<int>(spec.topology.n_agents(),
                                static_cast<int>(hw)));
}

void init_metrics(Metrics& m, int n, long long rounds) {
  m.n_agents = n;
  m.rounds = rounds;
  const std::size_t cells = static_cast<std::size_t>(rounds) * n;
  m.prediction.resize(cells);
  m.mistake.resize(cells);
  m.loss.resize(cells);
  m.cum_mistakes.resize(cells);
  m.cum_loss.resize(cells);
}

void finish_round_accounting(Metrics& m, long long t) {
  const int n = m.n_agents;
  for (int i = 0; i < n; ++i) {
    const std::size_t s = m.slot(t, i);
    const long long prev_m = t == 0 ? 0 : m.cum_mistakes[m.slot(t - 1, i)];
    const double prev_l = t == 0 ? 0.0 : m.cum_loss[m.slot(t - 1, i)];
    m.cum_mistakes[s] = prev_m + m.mistake[s];
    m.cum_loss[s] = prev_l + m.loss[s];
  }
}

Metrics run_weighted_majority(const ExperimentSpec& spec) {
  const int n = spec.topology.n_agents();
  DwmConfig cfg = spec.dwm;
  cfg.n_agents = n;
  cfg.randomized =
      spec.algorithm == Algorithm::rwm || spec.algorithm == Algorithm::drwm;
  cfg.merge = spec.algorithm == Algorithm::dwm_a ? DwmMerge::averaging
                                                 : DwmMerge::imitation;
  if (cfg.pool == nullptr || cfg.pool->size() < 1) {
    throw std::invalid_argument("run: weighted majority needs an expert pool");
  }
  if (!(cfg.alpha > 0.0) || !(cfg.alpha < 1.0)) {
    throw std::invalid_argument("run: alpha must be in (0,1)");
  }
  const int n_experts = cfg.pool->size();

  Matrix weights(n, n_experts, 1.0);
  DwmScratch scratch = DwmScratch::like(weights);
  const Executor exec = make_executor(spec);

  std::vector<Rng> rngs;
  if (cfg.randomized) {
    rngs.reserve(n);
    for (int i = 0; i < n; ++i) {
      rngs.emplace_back(mix_seed(spec.master_seed, i));
    }
  }

  Metrics metrics;
  init_metrics(metrics, n, spec.rounds);
  metrics.best_expert_round_mistakes.resize(spec.rounds);
  metrics.round_min_expert_mistakes.resize(spec.rounds);
  metrics.expert_total_mistakes.assign(n_experts, 0);

  // full per-round per-expert mistake counts, kept until the best expert
  // is known
  std::vector<int> round_expert_counts(
      static_cast<std::size_t>(spec.rounds) * n_experts);

  std::vector<const LabeledExample*> round_examples(n);
  for (long long t = 0; t < spec.rounds; ++t) {
    for (int i = 0; i < n; ++i) round_examples[i] = &spec.streams[i][t];
    DwmRound round = dwm_round(weights, round_examples, cfg, spec.topology,
                               rngs, scratch, exec);
    int least = std::numeric_limits<int>::max();
    for (int p = 0; p < n_experts; ++p) {
      metrics.expert_total_mistakes[p] += round.expert_mistakes[p];
      round_expert_counts[static_cast<std::size_t>(t) * n_experts + p] =
          round.expert_mistakes[p];
      least = std::min(least, round.expert_mistakes[p]);
    }
    metrics.round_min_expert_mistakes[t] = least;
    for (int i = 0; i < n; ++i) {
      const std::size_t s = metrics.slot(t, i);
      metrics.prediction[s] = static_cast<std::int8_t>(round.predictions[i]);
      metrics.mistake[s] = round.mistakes[i];
      metrics.loss[s] = round.mistakes[i];
    }
    finish_round_accounting(metrics, t);
  }

  const auto best_it = std::min_element(metrics.expert_total_mistakes.begin(),
                                        metrics.expert_total_mistakes.end());
  metrics.best_expert_total = *best_it;
  const int best_expert = static_cast<int>(
      best_it - metrics.expert_total_mistakes.begin());
  for (long long t = 0; t < spec.rounds; ++t) {
    metrics.best_expert_round_mistakes[t] = round_expert_counts
        [static_cast<std::size_t>(t) * n_experts + best_expert];
  }

  metrics.final_states.resize(n);
  for (int i = 0; i < n; ++i) {
    AgentState& st = metrics.final_states[i];
    st.id = i;
    st.params.assign(weights.row(i).begin(), weights.row(i).end());
    st.cumulative_mistakes = metrics.final_mistakes(i);
    st.cumulative_loss = metrics.final_loss(i);
  }
  return metrics;
}

Metrics run_mirror_descent(const ExperimentSpec& spec) {
  const int n = spec.topology.n_agents();
  OmdConfig cfg = spec.omd;
  cfg.n_agents = n;
  cfg.variant = (spec.algorithm == Algorithm::eg ||
                 spec.algorithm == Algorithm::doeg)
                    ? OmdVariant::exponentiated
                    : OmdVariant::gradient;
  const bool exponentiated = cfg.variant == OmdVariant::exponentiated;
  const int dim = spec.feature_dim;
  if (dim < 1) {
    throw std::invalid_argument("run: feature_dim must be >= 1");
  }
  if (exponentiated && !(cfg.l1_radius > 0.0)) {
    throw std::invalid_argument(
        "run: exponentiated variant needs l1_radius > 0");
  }
  const int cols = exponentiated ? 2 * dim : dim;
  const double C = cfg.hinge_scale;
  const double S = cfg.l1_radius;
  const Divergence div =
      exponentiated ? Divergence::entropy : Divergence::euclidean;

  Matrix params(n, cols, exponentiated ? 1.0 : 0.0);
  if (exponentiated && 2.0 * dim > S) {
    const double scale = S / (2.0 * dim);
    for (int i = 0; i < n; ++i) {
      for (double& v : params.row(i)) v *= scale;
    }
  }

  std::vector<double> comparator = cfg.comparator;
  if (comparator.empty()) {
    comparator = exponentiated
                     ? std::vector<double>(params.row(0).begin(),
                                           params.row(0).end())
                     : std::vector<double>(cols, 0.0);
  }
  if (static_cast<int>(comparator.size()) != cols) {
    throw std::invalid_argument("run: comparator has wrong dimension");
  }
  if (exponentiated) {
    for (double v : comparator) {
      if (!(v > 0.0)) {
        throw std::invalid_argument(
            "run: exponentiated comparator must be strictly positive");
      }
    }
  }

  Matrix grads(n, cols, 0.0);
  Matrix next(n, cols, 0.0);
  const Executor exec = make_executor(spec);

  // neighbor views are stable: params/grads storage never reallocates
  std::vector<std::vector<NeighborState>> neighbor_views(n);
  for (int i = 0; i < n; ++i) {
    for (int j : spec.topology.neighborhood(i)) {
      neighbor_views[i].push_back({params.row(j), grads.row(j)});
    }
  }

  Metrics metrics;
  init_metrics(metrics, n, spec.rounds);
  metrics.aggregate_grad_l2.resize(spec.rounds);
  metrics.aggregate_grad_linf.resize(spec.rounds);
  metrics.consensus_gap.resize(spec.rounds);
  metrics.comparator_cum_loss.assign(n, 0.0);

  std::vector<double> comparator_round_loss(n, 0.0);
  std::vector<double> aggregate(cols);

  for (long long t = 0; t < spec.rounds; ++t) {
    // local phase: predict, suffer, differentiate
    exec.for_each(n, [&](int i) {
      const LabeledExample& ex = spec.streams[i][t];
      std::span<const double> w = params.row(i);
      const double score = exponentiated ? effective_score(w, ex.features)
                                         : ex.features.dot(w);
      const int pred = score >= 0.0 ? 1 : -1;
      const double margin = 1.0 - ex.label * score;

      double loss;
      if (exponentiated || !cfg.regularized) {
        loss = std::max(0.0, margin);
      } else {
        double sq = 0.0;
        for (double v : w) sq += v * v;
        loss = C * std::max(0.0, margin) + 0.5 * sq;
      }

      std::span<double> g = grads.row(i);
      std::fill(g.begin(), g.end(), 0.0);
      if (exponentiated) {
        if (margin > 0.0) {
          for (const SparseVector::Entry& e : ex.features.entries()) {
            const double h = -ex.label * e.value;
            g[e.index] = h;
            g[e.index + dim] = -h;
          }
        }
      } else {
        if (margin > 0.0) {
          add_scaled(g, ex.features, -static_cast<double>(ex.label));
        }
        if (cfg.regularized) {
          for (int d = 0; d < cols; ++d) g[d] = C * g[d] + w[d];
        }
      }

      // comparator side of the same objective
      const double comp_score =
          exponentiated ? effective_score(comparator, ex.features)
                        : ex.features.dot(comparator);
      const double comp_margin = 1.0 - ex.label * comp_score;
      if (exponentiated || !cfg.regularized) {
        comparator_round_loss[i] = std::max(0.0, comp_margin);
      } else {
        double sq = 0.0;
        for (double v : comparator) sq += v * v;
        comparator_round_loss[i] = C * std::max(0.0, comp_margin) + 0.5 * sq;
      }

      const std::size_t s = metrics.slot(t, i);
      metrics.prediction[s] = static_cast<std::int8_t>(pred);
      metrics.mistake[s] = pred != ex.label ? 1 : 0;
      metrics.loss[s] = loss;
    });

    // deterministic instrumentation between the phases
    std::fill(aggregate.begin(), aggregate.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      std::span<const double> g = grads.row(i);
      for (int d = 0; d < cols; ++d) aggregate[d] += g[d];
    }
    double l2 = 0.0, linf = 0.0;
    for (double v : aggregate) {
      l2 += v * v;
      linf = std::max(linf, std::abs(v));
    }
    metrics.aggregate_grad_l2[t] = std::sqrt(l2);
    metrics.aggregate_grad_linf[t] = linf;

    double gap = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        std::span<const double> wi = params.row(i);
        std::span<const double> wj = params.row(j);
        for (int d = 0; d < cols; ++d) {
          gap = std::max(gap, std::abs(wi[d] - wj[d]));
        }
        metrics.max_pairwise_divergence =
            std::max(metrics.max_pairwise_divergence,
                     bregman_divergence(div, wi, wj));
      }
      metrics.max_comparator_divergence =
          std::max(metrics.max_comparator_divergence,
                   bregman_divergence(div, params.row(i), comparator));
      metrics.comparator_cum_loss[i] += comparator_round_loss[i];
    }
    metrics.consensus_gap[t] = gap;
    finish_round_accounting(metrics, t);

    // communicate phase
    const double eta = eta_schedule(t + 1);
    exec.for_each(n, [&](int i) {
      if (exponentiated) {
        doeg_update(neighbor_views[i], eta, S, next.row(i));
      } else {
        dogd_update(neighbor_views[i], eta, next.row(i));
      }
    });
    for (int i = 0; i < n; ++i) {
      std::span<const double> src = next.row(i);
      std::span<double> dst = params.row(i);
      std::copy(src.begin(), src.end(), dst.begin());
    }
  }

  metrics.final_states.resize(n);
  for (int i = 0; i < n; ++i) {
    AgentState& st = metrics.final_states[i];
    st.id = i;
    st.params.assign(params.row(i).begin(), params.row(i).end());
    st.cumulative_mistakes = metrics.final_mistakes(i);
    st.cumulative_loss = metrics.final_loss(i);
  }
  return metrics;
}

}  // namespace

Metrics run(const ExperimentSpec& spec) {
  validate_common(spec);
  return is_weighted_majority(spec.algorithm) ? run_weighted_majority(spec)
                                              : run_mirror_descent(spec);
}

}  // namespace dol
