#include "dol/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "dol/rng.hpp"

namespace dol {

namespace {

bool parse_double(std::string_view s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_int(std::string_view s, int& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

int parse_label(std::string_view tok, int line_no) {
  if (tok == "+1" || tok == "1") return 1;
  if (tok == "-1") return -1;
  if (tok == "0") return -1;  // {0,1}-labeled data normalizes to {-1,+1}
  throw ParseError("unrecognized label '" + std::string(tok) + "'", line_no);
}

}  // namespace

Dataset parse_libsvm(std::istream& in) {
  Dataset d;
  std::string line;
  int line_no = 0;
  int max_index = -1;  // 0-based
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::istringstream fields(line);
    std::string tok;
    if (!(fields >> tok)) {
      throw ParseError("empty line", line_no);
    }
    LabeledExample ex;
    ex.label = parse_label(tok, line_no);

    std::vector<SparseVector::Entry> entries;
    int prev_index = 0;  // 1-based, entries must exceed this
    while (fields >> tok) {
      std::size_t colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 ||
          colon + 1 == tok.size()) {
        throw ParseError("malformed feature '" + tok + "'", line_no);
      }
      int index = 0;
      double value = 0.0;
      if (!parse_int(std::string_view(tok).substr(0, colon), index)) {
        throw ParseError("bad feature index in '" + tok + "'", line_no);
      }
      if (!parse_double(std::string_view(tok).substr(colon + 1), value)) {
        throw ParseError("bad feature value in '" + tok + "'", line_no);
      }
      if (index < 1) {
        throw ParseError("feature index must be >= 1, got " +
                             std::to_string(index),
                         line_no);
      }
      if (index <= prev_index) {
        throw ParseError("non-increasing feature index " +
                             std::to_string(index) + " after " +
                             std::to_string(prev_index),
                         line_no);
      }
      if (!std::isfinite(value)) {
        throw ParseError("non-finite feature value in '" + tok + "'",
                         line_no);
      }
      prev_index = index;
      max_index = std::max(max_index, index - 1);
      if (value != 0.0) {
        entries.push_back({index - 1, value});
      }
    }
    // dim is fixed up after the full pass; use a loose bound for now
    ex.features = SparseVector(std::move(entries),
                               prev_index > 0 ? prev_index : 0);
    d.examples.push_back(std::move(ex));
  }
  if (d.examples.empty()) {
    throw ParseError("empty input", line_no == 0 ? 1 : line_no);
  }
  d.dim = max_index + 1;
  for (LabeledExample& ex : d.examples) {
    std::vector<SparseVector::Entry> entries(ex.features.entries().begin(),
                                             ex.features.entries().end());
    ex.features = SparseVector(std::move(entries), d.dim);
  }
  return d;
}

Dataset parse_libsvm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open dataset file: " + path);
  }
  return parse_libsvm(in);
}

void serialize_libsvm(const Dataset& d, std::ostream& out) {
  char buf[64];
  for (const LabeledExample& ex : d.examples) {
    out << (ex.label > 0 ? "+1" : "-1");
    for (const SparseVector::Entry& e : ex.features.entries()) {
      std::snprintf(buf, sizeof buf, "%.17g", e.value);
      out << ' ' << (e.index + 1) << ':' << buf;
    }
    out << '\n';
  }
}

std::string serialize_libsvm(const Dataset& d) {
  std::ostringstream out;
  serialize_libsvm(d, out);
  return out.str();
}

PartitionStrategy partition_strategy_from_name(const std::string& name) {
  if (name == "round-robin") return PartitionStrategy::round_robin;
  if (name == "contiguous") return PartitionStrategy::contiguous;
  if (name == "shuffled") return PartitionStrategy::shuffled;
  throw std::invalid_argument("unknown partition strategy: " + name);
}

std::string partition_strategy_name(PartitionStrategy s) {
  switch (s) {
    case PartitionStrategy::round_robin: return "round-robin";
    case PartitionStrategy::contiguous: return "contiguous";
    case PartitionStrategy::shuffled: return "shuffled";
  }
  return "?";
}

std::vector<std::vector<LabeledExample>> partition(const Dataset& d,
                                                   const PartitionPlan& plan) {
  const int n = plan.n_agents;
  if (n < 1) {
    throw std::invalid_argument("partition: need at least one agent");
  }
  if (static_cast<std::size_t>(n) > d.size()) {
    throw std::invalid_argument("partition: more agents (" +
                                std::to_string(n) + ") than examples (" +
                                std::to_string(d.size()) + ")");
  }

  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  if (plan.strategy == PartitionStrategy::shuffled) {
    Rng rng(plan.seed);
    for (std::size_t k = order.size(); k > 1; --k) {
      std::size_t j = uniform_index(rng, k);
      std::swap(order[k - 1], order[j]);
    }
  }

  std::vector<std::vector<LabeledExample>> streams(n);
  if (plan.strategy == PartitionStrategy::contiguous) {
    const std::size_t base = d.size() / n;
    const std::size_t extra = d.size() % n;  // first `extra` agents get one more
    std::size_t pos = 0;
    for (int i = 0; i < n; ++i) {
      std::size_t len = base + (static_cast<std::size_t>(i) < extra ? 1 : 0);
      streams[i].reserve(len);
      for (std::size_t k = 0; k < len; ++k) {
        streams[i].push_back(d.examples[order[pos++]]);
      }
    }
  } else {
    for (int i = 0; i < n; ++i) streams[i].reserve(d.size() / n + 1);
    for (std::size_t k = 0; k < order.size(); ++k) {
      streams[k % n].push_back(d.examples[order[k]]);
    }
  }
  return streams;
}

Dataset gen_synthetic(const SyntheticSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("gen_synthetic: n must be >= 1");
  if (spec.dim < 1) {
    throw std::invalid_argument("gen_synthetic: dim must be >= 1");
  }
  if (!(spec.margin > 0.0)) {
    throw std::invalid_argument("gen_synthetic: margin must be > 0");
  }
  if (spec.noise_rate < 0.0 || spec.noise_rate >= 1.0) {
    throw std::invalid_argument("gen_synthetic: noise_rate must be in [0,1)");
  }

  // Independent streams: points/normal, base labels, noise flips. Keeping
  // the flips on their own stream makes the point sequence invariant to
  // noise_rate.
  Rng rng_x(mix_seed(spec.seed, 1));
  Rng rng_label(mix_seed(spec.seed, 2));
  Rng rng_noise(mix_seed(spec.seed, 3));

  std::vector<double> normal(spec.dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& u : normal) {
      u = uniform_in(rng_x, -1.0, 1.0);
      norm2 += u * u;
    }
  } while (norm2 < 1e-12);
  const double inv_norm = 1.0 / std::sqrt(norm2);
  for (double& u : normal) u *= inv_norm;

  Dataset d;
  d.dim = spec.dim;
  d.examples.reserve(spec.n);
  std::vector<double> x(spec.dim);
  for (int k = 0; k < spec.n; ++k) {
    const int wanted = uniform01(rng_label) < 0.5 ? 1 : -1;
    double s = 0.0;
    long attempts = 0;
    do {
      s = 0.0;
      for (int j = 0; j < spec.dim; ++j) {
        x[j] = uniform_in(rng_x, -1.0, 1.0);
        s += normal[j] * x[j];
      }
      if (++attempts > 1000000) {
        throw std::invalid_argument(
            "gen_synthetic: margin too large for the sampling box");
      }
    } while (std::abs(s) < spec.margin);
    if ((s >= 0 ? 1 : -1) != wanted) {
      // mirror through the origin; preserves the sampling distribution
      for (double& v : x) v = -v;
    }
    int label = wanted;
    if (uniform01(rng_noise) < spec.noise_rate) label = -label;

    std::vector<SparseVector::Entry> entries;
    entries.reserve(spec.dim);
    for (int j = 0; j < spec.dim; ++j) {
      if (x[j] != 0.0) entries.push_back({j, x[j]});
    }
    d.examples.push_back({SparseVector(std::move(entries), spec.dim), label});
  }
  return d;
}

std::string synthetic_manifest_json(const SyntheticSpec& spec) {
  nlohmann::json j;
  j["n"] = spec.n;
  j["dim"] = spec.dim;
  j["margin"] = spec.margin;
  j["noise_rate"] = spec.noise_rate;
  j["seed"] = spec.seed;
  return j.dump(2);
}

SyntheticSpec synthetic_spec_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SyntheticSpec spec;
  spec.n = j.at("n").get<int>();
  spec.dim = j.at("dim").get<int>();
  spec.margin = j.at("margin").get<double>();
  spec.noise_rate = j.at("noise_rate").get<double>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

}  // namespace dol
