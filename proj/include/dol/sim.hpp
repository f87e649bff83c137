#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dol/dataset.hpp"
#include "dol/dwm.hpp"
#include "dol/metrics.hpp"
#include "dol/omd.hpp"
#include "dol/topology.hpp"

namespace dol {

enum class Algorithm {
  wma,    // single-agent weighted majority
  rwm,    // single-agent randomized weighted majority
  dwm_i,  // distributed WM, geometric (imitation) merge
  dwm_a,  // distributed WM, arithmetic (averaging) merge
  drwm,   // distributed randomized WM, geometric merge
  ogd,    // single-agent online gradient descent
  eg,     // single-agent exponentiated gradient
  dogd,   // distributed online gradient descent
  doeg,   // distributed online exponentiated gradient
};

Algorithm algorithm_from_name(const std::string& name);
std::string algorithm_name(Algorithm a);

bool is_weighted_majority(Algorithm a);
bool is_mirror_descent(Algorithm a);
bool is_single_agent(Algorithm a);

struct ExperimentSpec {
  Algorithm algorithm = Algorithm::wma;
  Topology topology;  // defaults to a single agent
  long long rounds = 0;
  // one stream per agent, each at least `rounds` long
  std::vector<std::vector<LabeledExample>> streams;
  DwmConfig dwm;      // weighted-majority family
  OmdConfig omd;      // mirror-descent family
  int feature_dim = 0;  // D, mirror-descent family
  std::uint64_t master_seed = 0;
  bool parallel = false;
};

// Executes the round-synchronous protocol: at each round every agent
// predicts on its next example with the parameters produced by the
// previous round's merge, updates locally, then merges with its
// neighborhood. The result is a pure function of the spec; parallel
// execution is bit-identical to sequential. Throws std::invalid_argument
// on inconsistent specs (short streams, missing pool, agent-count
// mismatches, non-positive ball radius for the exponentiated family).
Metrics run(const ExperimentSpec& spec);

}  // namespace dol
