#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dol/dataset.hpp"
#include "dol/sim.hpp"

namespace dol {

// Everything the experiment runner needs for one sweep over agent counts.
struct RunConfig {
  Algorithm algorithm = Algorithm::dwm_i;
  std::vector<int> agent_sweep = {1};
  GraphKind topology = GraphKind::complete;

  std::string data_path;                   // LIBSVM file, or
  std::optional<SyntheticSpec> synthetic;  // generated stream

  // weighted-majority family
  double alpha = 0.9;
  int n_experts = 4;
  int probes = 200;

  // mirror-descent family; unset C/S fall back to per-dataset defaults
  // when the file name is recognized
  std::optional<double> hinge_scale;  // C
  std::optional<double> l1_radius;    // S
  bool regularized = true;

  long long rounds = 0;  // 0: as many rounds as the partition allows
  std::uint64_t seed = 0;
  PartitionStrategy partition = PartitionStrategy::round_robin;
  std::string out_dir = ".";
  bool parallel = false;
  bool emit_bounds = false;
};

struct RunOutputs {
  std::vector<std::string> csv_paths;
  std::string summary_path;
};

// Runs the experiment once per sweep entry N and writes run_N<N>.csv
// (header: round,agent,mistake,cum_mistakes,loss,cum_loss) plus one
// summary.json covering all runs. Progress lines go to `log`. Throws on
// configuration or data errors.
RunOutputs run_experiments(const RunConfig& cfg, std::ostream& log);

}  // namespace dol
