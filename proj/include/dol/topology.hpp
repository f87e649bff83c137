#pragma once

#include <utility>
#include <vector>

namespace dol {

enum class GraphKind { complete, ring, star, custom };

// Undirected connected communication graph over N agents. Connectivity is
// checked at construction; self-loops are rejected. The neighborhood used
// by the averaging rules always includes the agent itself.
class Topology {
 public:
  static Topology complete(int n_agents);
  static Topology ring(int n_agents);
  static Topology star(int n_agents);  // hub is agent 0
  static Topology custom(int n_agents,
                         const std::vector<std::pair<int, int>>& edges);

  Topology() : Topology(complete(1)) {}

  int n_agents() const { return n_agents_; }
  GraphKind kind() const { return kind_; }

  // {i} ∪ adjacent(i), in ascending index order. Size is degree(i) + 1.
  const std::vector<int>& neighborhood(int i) const;
  int degree(int i) const;

 private:
  Topology(int n_agents, GraphKind kind,
           std::vector<std::vector<int>> neighborhoods);

  int n_agents_ = 1;
  GraphKind kind_ = GraphKind::complete;
  std::vector<std::vector<int>> neighborhoods_;
};

}  // namespace dol
