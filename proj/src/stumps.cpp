#include "dol/stumps.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "dol/rng.hpp"

namespace dol {

int stump_predict(const DecisionStump& s, const SparseVector& x) {
  return x.at(s.dim_index) >= s.threshold ? s.polarity : -s.polarity;
}

void ExpertPool::predict_all(const SparseVector& x, std::span<int> out) const {
  for (std::size_t p = 0; p < stumps.size(); ++p) {
    out[p] = stump_predict(stumps[p], x);
  }
}

double stump_training_error(const DecisionStump& s, const Dataset& d) {
  if (d.examples.empty()) return 0.0;
  long wrong = 0;
  for (const LabeledExample& ex : d.examples) {
    if (stump_predict(s, ex.features) != ex.label) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(d.size());
}

namespace {

struct DimColumn {
  std::vector<double> values;   // sorted ascending
  std::vector<long> pos_below;  // prefix count of +1 labels
  long pos_total = 0;
  double min = 0.0, max = 0.0;
};

DimColumn column_for(const Dataset& d, int dim) {
  const std::size_t n = d.size();
  std::vector<std::pair<double, int>> rows(n);
  for (std::size_t k = 0; k < n; ++k) {
    rows[k] = {d.examples[k].features.at(dim), d.examples[k].label};
  }
  std::sort(rows.begin(), rows.end());

  DimColumn col;
  col.values.resize(n);
  col.pos_below.resize(n + 1, 0);
  for (std::size_t k = 0; k < n; ++k) {
    col.values[k] = rows[k].first;
    col.pos_below[k + 1] = col.pos_below[k] + (rows[k].second > 0 ? 1 : 0);
  }
  col.pos_total = col.pos_below[n];
  col.min = col.values.front();
  col.max = col.values.back();
  return col;
}

// mistakes of the polarity=+1 stump at `threshold`; the polarity=-1 stump
// makes exactly n minus this many
long plus_errors(const DimColumn& col, double threshold) {
  const long n = static_cast<long>(col.values.size());
  const auto split =
      std::lower_bound(col.values.begin(), col.values.end(), threshold) -
      col.values.begin();
  const long pos_below = col.pos_below[split];
  const long neg_at_or_above = (n - split) - (col.pos_total - pos_below);
  return pos_below + neg_at_or_above;
}

}  // namespace

ExpertPool train_stumps(const Dataset& d, int n_experts, int probes,
                        std::uint64_t seed) {
  if (n_experts < 1) {
    throw std::invalid_argument("train_stumps: need at least one expert");
  }
  if (n_experts > d.dim) {
    throw std::invalid_argument("train_stumps: more experts requested (" +
                                std::to_string(n_experts) +
                                ") than feature dimensions (" +
                                std::to_string(d.dim) + ")");
  }
  if (probes < 2) {
    throw std::invalid_argument("train_stumps: need at least two probes");
  }
  bool has_pos = false, has_neg = false;
  for (const LabeledExample& ex : d.examples) {
    (ex.label > 0 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) {
    throw std::invalid_argument(
        "train_stumps: dataset must contain both label classes");
  }

  // Seeded partial Fisher-Yates over all dimensions; constant dimensions
  // are skipped, which is equivalent to resampling them.
  std::vector<int> dims(d.dim);
  std::iota(dims.begin(), dims.end(), 0);
  Rng rng(seed);
  for (std::size_t k = dims.size(); k > 1; --k) {
    std::size_t j = uniform_index(rng, k);
    std::swap(dims[k - 1], dims[j]);
  }

  const long n = static_cast<long>(d.size());
  ExpertPool pool;
  for (int dim : dims) {
    if (pool.size() == n_experts) break;
    DimColumn col = column_for(d, dim);
    if (col.min == col.max) continue;  // constant dimension, resample

    long best_err = std::numeric_limits<long>::max();
    DecisionStump best{dim, 0.0, 1};
    const double step = (col.max - col.min) / (probes - 1);
    for (int k = 0; k < probes; ++k) {
      const double threshold = col.min + step * k;
      const long err_plus = plus_errors(col, threshold);
      if (err_plus < best_err) {
        best_err = err_plus;
        best = {dim, threshold, 1};
      }
      if (n - err_plus < best_err) {
        best_err = n - err_plus;
        best = {dim, threshold, -1};
      }
    }
    pool.stumps.push_back(best);
  }
  if (pool.size() < n_experts) {
    throw std::invalid_argument(
        "train_stumps: only " + std::to_string(pool.size()) +
        " non-constant dimensions available, need " +
        std::to_string(n_experts));
  }
  return pool;
}

std::string pool_to_json(const ExpertPool& pool) {
  nlohmann::json j = nlohmann::json::array();
  for (const DecisionStump& s : pool.stumps) {
    j.push_back({{"dim_index", s.dim_index},
                 {"threshold", s.threshold},
                 {"polarity", s.polarity}});
  }
  return j.dump(2);
}

ExpertPool pool_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ExpertPool pool;
  for (const auto& item : j) {
    DecisionStump s;
    s.dim_index = item.at("dim_index").get<int>();
    s.threshold = item.at("threshold").get<double>();
    s.polarity = item.at("polarity").get<int>();
    if (s.polarity != 1 && s.polarity != -1) {
      throw std::invalid_argument("pool_from_json: polarity must be +1/-1");
    }
    pool.stumps.push_back(s);
  }
  return pool;
}

}  // namespace dol
