#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dol/sparse_vector.hpp"

namespace dol {

struct Dataset {
  std::vector<LabeledExample> examples;
  int dim = 0;  // ambient feature dimension, >= max stored index + 1

  std::size_t size() const { return examples.size(); }
  bool operator==(const Dataset&) const = default;
};

// Parse failure carrying the 1-based line number it occurred on.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// LIBSVM text format: `<label> <idx>:<val> ...` per line, 1-based strictly
// increasing indices. Labels +1/1, -1, and 0 are accepted; 0 maps to -1.
// Indices are converted to 0-based. Throws ParseError on malformed lines,
// non-increasing indices, or empty input.
Dataset parse_libsvm(std::istream& in);
Dataset parse_libsvm_file(const std::string& path);

void serialize_libsvm(const Dataset& d, std::ostream& out);
std::string serialize_libsvm(const Dataset& d);

enum class PartitionStrategy { round_robin, contiguous, shuffled };

PartitionStrategy partition_strategy_from_name(const std::string& name);
std::string partition_strategy_name(PartitionStrategy s);

struct PartitionPlan {
  PartitionStrategy strategy = PartitionStrategy::round_robin;
  int n_agents = 1;
  std::uint64_t seed = 0;  // shuffled only
};

// Splits a dataset into one stream per agent. The concatenation of the
// streams is a permutation of the input and stream lengths differ by at
// most one. Round-robin sends example k to agent k mod N.
std::vector<std::vector<LabeledExample>> partition(const Dataset& d,
                                                   const PartitionPlan& plan);

struct SyntheticSpec {
  int n = 0;
  int dim = 0;
  double margin = 0.0;      // > 0, geometric margin of the hidden hyperplane
  double noise_rate = 0.0;  // in [0, 1), independent label flips
  std::uint64_t seed = 0;

  bool operator==(const SyntheticSpec&) const = default;
};

// Linearly separable stream: a hidden unit normal is drawn from the seed,
// points are sampled uniformly in [-1,1]^dim subject to |<u,x>| >= margin,
// and labels are sign(<u,x>) flipped independently with probability
// noise_rate. The point stream and base labels do not depend on
// noise_rate, so the noiseless labels of a run can be recovered by
// regenerating with noise_rate = 0 and the same seed.
Dataset gen_synthetic(const SyntheticSpec& spec);

std::string synthetic_manifest_json(const SyntheticSpec& spec);
SyntheticSpec synthetic_spec_from_json(const std::string& text);

}  // namespace dol
