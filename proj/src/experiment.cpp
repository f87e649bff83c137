#include "dol/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "dol/bounds.hpp"
#include "dol/stumps.hpp"

namespace dol {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Topology make_topology(GraphKind kind, int n) {
  switch (kind) {
    case GraphKind::complete: return Topology::complete(n);
    case GraphKind::ring: return Topology::ring(n);
    case GraphKind::star: return Topology::star(n);
    case GraphKind::custom:
      throw std::invalid_argument(
          "run_experiments: custom topologies need explicit edges");
  }
  throw std::invalid_argument("run_experiments: unknown topology kind");
}

std::string topology_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::complete: return "complete";
    case GraphKind::ring: return "ring";
    case GraphKind::star: return "star";
    case GraphKind::custom: return "custom";
  }
  return "?";
}

// Table of per-dataset mirror-descent parameters keyed by file name.
struct DatasetDefaults {
  const char* name;
  double C;
  double S;
};
constexpr DatasetDefaults kDatasetDefaults[] = {
    {"cod-rna", 1e-2, 1e4},
    {"covtype", 1e4, 1e4},
};

void apply_dataset_defaults(RunConfig& cfg) {
  if (cfg.data_path.empty()) return;
  const std::string stem = std::filesystem::path(cfg.data_path).stem().string();
  for (const DatasetDefaults& d : kDatasetDefaults) {
    if (stem.rfind(d.name, 0) == 0) {
      if (!cfg.hinge_scale) cfg.hinge_scale = d.C;
      if (!cfg.l1_radius) cfg.l1_radius = d.S;
      return;
    }
  }
}

void write_csv(const std::string& path, const Metrics& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "round,agent,mistake,cum_mistakes,loss,cum_loss\n";
  for (long long t = 0; t < m.rounds; ++t) {
    for (int i = 0; i < m.n_agents; ++i) {
      const std::size_t s = m.slot(t, i);
      out << (t + 1) << ',' << i << ',' << int(m.mistake[s]) << ','
          << m.cum_mistakes[s] << ',' << format_double(m.loss[s]) << ','
          << format_double(m.cum_loss[s]) << '\n';
    }
  }
}

// Total loss of a fixed parameter vector over each agent's first T
// examples, under the run's objective.
std::vector<double> comparator_losses(
    const std::vector<std::vector<LabeledExample>>& streams, long long rounds,
    const std::vector<double>& point, bool exponentiated, bool regularized,
    double C) {
  std::vector<double> totals(streams.size(), 0.0);
  for (std::size_t i = 0; i < streams.size(); ++i) {
    for (long long t = 0; t < rounds; ++t) {
      const LabeledExample& ex = streams[i][t];
      const double score = exponentiated
                               ? effective_score(point, ex.features)
                               : ex.features.dot(point);
      const double hinge = std::max(0.0, 1.0 - ex.label * score);
      if (exponentiated || !regularized) {
        totals[i] += hinge;
      } else {
        double sq = 0.0;
        for (double v : point) sq += v * v;
        totals[i] += C * hinge + 0.5 * sq;
      }
    }
  }
  return totals;
}

json dwm_summary(const RunConfig& cfg, const Metrics& m, int n_agents) {
  json j;
  j["m_star"] = m.best_expert_total;
  int series_max = 0;
  for (int v : m.best_expert_round_mistakes) series_max = std::max(series_max, v);
  long long round_min_sum = 0;
  for (int v : m.round_min_expert_mistakes) round_min_sum += v;
  j["m_star_series_max"] = series_max;
  j["round_min_series_sum"] = round_min_sum;
  j["expert_total_mistakes"] = m.expert_total_mistakes;

  if (!cfg.emit_bounds) return j;

  const int P = cfg.n_experts;
  const double alpha = cfg.alpha;
  if (cfg.algorithm == Algorithm::rwm || cfg.algorithm == Algorithm::drwm) {
    j["bounds"] = nullptr;  // randomized play: no deterministic mistake cap
    return j;
  }
  double individual = 0.0;
  if (cfg.algorithm == Algorithm::dwm_a) {
    individual = dwm_a_bound(m.best_expert_round_mistakes, n_agents, P, alpha);
    j["bounds"]["family"] = "averaging";
    j["bounds"]["social"] = n_agents * individual;
  } else {
    individual = dwm_i_bound(static_cast<double>(m.best_expert_total),
                             n_agents, P, alpha);
    j["bounds"]["family"] = "imitation";
    j["bounds"]["social"] =
        dwm_social_bound(static_cast<double>(m.best_expert_total), n_agents, P,
                         alpha);
  }
  j["bounds"]["individual"] = individual;
  json satisfied = json::array();
  long long total = 0;
  for (int i = 0; i < n_agents; ++i) {
    const long long mi = m.final_mistakes(i);
    total += mi;
    satisfied.push_back(static_cast<double>(mi) <= individual);
  }
  j["bounds"]["bound_satisfied"] = satisfied;
  j["bounds"]["social_satisfied"] =
      static_cast<double>(total) <= j["bounds"]["social"].get<double>();
  return j;
}

json omd_summary(const RunConfig& cfg, const Metrics& m, int n_agents,
                 long long rounds,
                 const std::vector<std::vector<LabeledExample>>& streams) {
  const bool exponentiated =
      cfg.algorithm == Algorithm::eg || cfg.algorithm == Algorithm::doeg;
  const double C = cfg.hinge_scale.value_or(1.0);
  const double S = cfg.l1_radius.value_or(0.0);

  json j;
  // regret against the fixed reference point used during the run
  std::vector<std::vector<double>> losses(n_agents);
  for (int i = 0; i < n_agents; ++i) {
    losses[i].resize(rounds);
    for (long long t = 0; t < rounds; ++t) losses[i][t] = m.loss[m.slot(t, i)];
  }
  RegretReport regret = regret_accounting(losses, m.comparator_cum_loss);
  j["comparator"] = exponentiated ? "initial" : "zero";
  j["regret_individual"] = regret.individual;
  j["regret_social"] = regret.social;
  j["regret_average"] = regret.average;

  // post-hoc comparator: scaled copies of the final averaged iterate
  {
    const int cols = static_cast<int>(m.final_states[0].params.size());
    std::vector<double> mean(cols, 0.0);
    for (const AgentState& st : m.final_states) {
      for (int d = 0; d < cols; ++d) mean[d] += st.params[d];
    }
    for (double& v : mean) v /= n_agents;

    std::vector<double> best_point(cols, 0.0);
    std::string best_name = "zero";
    if (exponentiated) {
      // a zero effective predictor needs a symmetric positive point
      best_point.assign(cols, std::min(1.0, S / cols));
      best_name = "symmetric";
    }
    std::vector<double> best_losses = comparator_losses(
        streams, rounds, best_point, exponentiated, cfg.regularized, C);
    double best_total =
        std::accumulate(best_losses.begin(), best_losses.end(), 0.0);
    for (double scale : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      std::vector<double> candidate = mean;
      for (double& v : candidate) v *= scale;
      if (exponentiated) {
        double l1 = 0.0;
        for (double v : candidate) l1 += std::abs(v);
        if (l1 > S) {
          for (double& v : candidate) v *= S / l1;
        }
        for (double& v : candidate) v = std::max(v, 1e-12);
      }
      std::vector<double> cl = comparator_losses(
          streams, rounds, candidate, exponentiated, cfg.regularized, C);
      const double total = std::accumulate(cl.begin(), cl.end(), 0.0);
      if (total < best_total) {
        best_total = total;
        best_losses = std::move(cl);
        best_name = "final_average_x" + format_double(scale);
      }
    }
    RegretReport posthoc = regret_accounting(losses, best_losses);
    j["posthoc_comparator"] = {{"name", best_name},
                               {"regret_individual", posthoc.individual},
                               {"regret_social", posthoc.social},
                               {"regret_average", posthoc.average}};
  }

  if (!cfg.emit_bounds) return j;

  const double diam =
      std::max(m.max_pairwise_divergence, m.max_comparator_divergence);
  const double a = exponentiated ? 1.0 / S : 1.0;
  const std::vector<double>& norms =
      exponentiated ? m.aggregate_grad_linf : m.aggregate_grad_l2;
  const double bound = domd_avg_regret_bound(diam, a, norms, n_agents);
  j["bounds"]["diam_bound"] = diam;
  j["bounds"]["strong_convexity"] = a;
  j["bounds"]["dual_norm"] = exponentiated ? "linf" : "l2";
  j["bounds"]["average_regret"] = bound;
  j["bounds"]["bound_satisfied"] = regret.average <= bound;
  return j;
}

}  // namespace

RunOutputs run_experiments(const RunConfig& cfg_in, std::ostream& log) {
  RunConfig cfg = cfg_in;
  apply_dataset_defaults(cfg);

  if (cfg.agent_sweep.empty()) {
    throw std::invalid_argument("run_experiments: empty agent sweep");
  }
  std::set<int> distinct(cfg.agent_sweep.begin(), cfg.agent_sweep.end());
  if (distinct.size() != cfg.agent_sweep.size() || *distinct.begin() < 1) {
    throw std::invalid_argument(
        "run_experiments: sweep values must be distinct and >= 1");
  }

  const bool mirror = is_mirror_descent(cfg.algorithm);
  if (mirror && !cfg.hinge_scale) {
    throw std::invalid_argument(
        "run_experiments: C is required (no dataset default matched)");
  }
  const bool exponentiated =
      cfg.algorithm == Algorithm::eg || cfg.algorithm == Algorithm::doeg;
  if (exponentiated && !cfg.l1_radius) {
    throw std::invalid_argument(
        "run_experiments: S is required (no dataset default matched)");
  }

  Dataset data;
  json dataset_info;
  if (cfg.synthetic) {
    data = gen_synthetic(*cfg.synthetic);
    dataset_info["synthetic"] =
        json::parse(synthetic_manifest_json(*cfg.synthetic));
  } else if (!cfg.data_path.empty()) {
    data = parse_libsvm_file(cfg.data_path);
    dataset_info["path"] = cfg.data_path;
  } else {
    throw std::invalid_argument(
        "run_experiments: need a dataset path or a synthetic spec");
  }
  dataset_info["n_examples"] = data.size();
  dataset_info["dim"] = data.dim;

  ExpertPool pool;
  if (is_weighted_majority(cfg.algorithm)) {
    pool = train_stumps(data, cfg.n_experts, cfg.probes, cfg.seed);
  }

  std::filesystem::create_directories(cfg.out_dir);

  json summary;
  summary["algorithm"] = algorithm_name(cfg.algorithm);
  summary["topology"] = topology_name(cfg.topology);
  summary["partition"] = partition_strategy_name(cfg.partition);
  summary["seed"] = cfg.seed;
  summary["parallel"] = cfg.parallel;
  summary["dataset"] = dataset_info;
  if (is_weighted_majority(cfg.algorithm)) {
    summary["alpha"] = cfg.alpha;
    summary["n_experts"] = cfg.n_experts;
    summary["probes"] = cfg.probes;
    summary["pool"] = json::parse(pool_to_json(pool));
  } else {
    summary["C"] = *cfg.hinge_scale;
    if (cfg.l1_radius) summary["S"] = *cfg.l1_radius;
    summary["regularized"] = cfg.regularized;
  }
  summary["runs"] = json::array();

  RunOutputs outputs;
  for (int n_agents : cfg.agent_sweep) {
    PartitionPlan plan{cfg.partition, n_agents, cfg.seed};
    std::vector<std::vector<LabeledExample>> streams = partition(data, plan);

    long long min_stream = std::numeric_limits<long long>::max();
    for (const auto& s : streams) {
      min_stream = std::min(min_stream, static_cast<long long>(s.size()));
    }
    const long long rounds = cfg.rounds > 0 ? cfg.rounds : min_stream;
    if (rounds > min_stream) {
      throw std::invalid_argument(
          "run_experiments: " + std::to_string(rounds) +
          " rounds requested but the shortest stream has " +
          std::to_string(min_stream) + " examples at N=" +
          std::to_string(n_agents));
    }

    ExperimentSpec spec;
    spec.algorithm = cfg.algorithm;
    spec.topology = make_topology(cfg.topology, n_agents);
    spec.rounds = rounds;
    spec.streams = std::move(streams);
    spec.master_seed = cfg.seed;
    spec.parallel = cfg.parallel;
    if (is_weighted_majority(cfg.algorithm)) {
      spec.dwm.alpha = cfg.alpha;
      spec.dwm.pool = &pool;
      spec.dwm.seed = cfg.seed;
    } else {
      spec.feature_dim = data.dim;
      spec.omd.hinge_scale = *cfg.hinge_scale;
      spec.omd.l1_radius = cfg.l1_radius.value_or(0.0);
      spec.omd.regularized = cfg.regularized;
    }

    const auto start = std::chrono::steady_clock::now();
    Metrics metrics = run(spec);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    ReplayReport audit = replay_check(metrics);
    if (!audit.ok) {
      throw std::runtime_error("run_experiments: metrics failed self-audit\n" +
                               audit.diagnostics);
    }

    const std::string csv_path =
        (std::filesystem::path(cfg.out_dir) /
         ("run_N" + std::to_string(n_agents) + ".csv"))
            .string();
    write_csv(csv_path, metrics);
    outputs.csv_paths.push_back(csv_path);

    json entry;
    entry["n_agents"] = n_agents;
    entry["rounds"] = rounds;
    entry["wall_clock_seconds"] = elapsed;
    json final_mistakes = json::array();
    json final_loss = json::array();
    long long total_mistakes = 0;
    for (int i = 0; i < n_agents; ++i) {
      final_mistakes.push_back(metrics.final_mistakes(i));
      final_loss.push_back(metrics.final_loss(i));
      total_mistakes += metrics.final_mistakes(i);
    }
    entry["final_mistakes"] = final_mistakes;
    entry["total_mistakes"] = total_mistakes;
    entry["final_loss"] = final_loss;
    if (is_weighted_majority(cfg.algorithm)) {
      entry["dwm"] = dwm_summary(cfg, metrics, n_agents);
    } else {
      entry["omd"] = omd_summary(cfg, metrics, n_agents, rounds, spec.streams);
    }
    summary["runs"].push_back(entry);

    log << "[run] algo=" << algorithm_name(cfg.algorithm)
        << " N=" << n_agents << " T=" << rounds
        << " total_mistakes=" << total_mistakes << " wall=" << elapsed
        << "s\n";
  }

  outputs.summary_path =
      (std::filesystem::path(cfg.out_dir) / "summary.json").string();
  std::ofstream out(outputs.summary_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + outputs.summary_path);
  }
  out << summary.dump(2) << '\n';
  return outputs;
}

}  // namespace dol
