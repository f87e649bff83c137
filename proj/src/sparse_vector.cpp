#include "dol/sparse_vector.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dol {

SparseVector::SparseVector(std::vector<Entry> entries, int dim)
    : entries_(std::move(entries)), dim_(dim) {
  if (dim_ < 0) {
    throw std::invalid_argument("SparseVector: negative dimension");
  }
  int prev = -1;
  for (const Entry& e : entries_) {
    if (e.index <= prev) {
      throw std::invalid_argument(
          "SparseVector: indices must be strictly increasing, got " +
          std::to_string(e.index) + " after " + std::to_string(prev));
    }
    if (e.index >= dim_) {
      throw std::invalid_argument("SparseVector: index " +
                                  std::to_string(e.index) +
                                  " out of range for dim " +
                                  std::to_string(dim_));
    }
    if (e.value == 0.0) {
      throw std::invalid_argument("SparseVector: explicit zero at index " +
                                  std::to_string(e.index));
    }
    prev = e.index;
  }
}

double SparseVector::at(int index) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const Entry& e, int idx) { return e.index < idx; });
  if (it != entries_.end() && it->index == index) return it->value;
  return 0.0;
}

double SparseVector::dot(std::span<const double> dense) const {
  double acc = 0.0;
  for (const Entry& e : entries_) {
    if (static_cast<std::size_t>(e.index) < dense.size()) {
      acc += e.value * dense[e.index];
    }
  }
  return acc;
}

void add_scaled(std::span<double> out, const SparseVector& x, double scale) {
  for (const SparseVector::Entry& e : x.entries()) {
    if (static_cast<std::size_t>(e.index) < out.size()) {
      out[e.index] += scale * e.value;
    }
  }
}

}  // namespace dol
