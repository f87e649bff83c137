#pragma once

#include <span>
#include <vector>

namespace dol {

// Sparse feature vector over an ambient dimension. Entries are kept in
// strictly increasing index order and never store explicit zeros, so the
// representation of a given vector is unique.
class SparseVector {
 public:
  struct Entry {
    int index = 0;
    double value = 0.0;
    bool operator==(const Entry&) const = default;
  };

  SparseVector() = default;
  // Throws std::invalid_argument if indices are not strictly increasing,
  // out of [0, dim), or if a zero value is stored.
  SparseVector(std::vector<Entry> entries, int dim);

  int dim() const { return dim_; }
  std::span<const Entry> entries() const { return entries_; }

  // Value at `index`; absent entries read as 0.
  double at(int index) const;

  double dot(std::span<const double> dense) const;

  bool operator==(const SparseVector&) const = default;

 private:
  std::vector<Entry> entries_;
  int dim_ = 0;
};

// out += scale * x
void add_scaled(std::span<double> out, const SparseVector& x, double scale);

struct LabeledExample {
  SparseVector features;
  int label = 1;  // -1 or +1

  bool operator==(const LabeledExample&) const = default;
};

}  // namespace dol
