#include "dol/topology.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

namespace dol {

namespace {

std::vector<std::vector<int>> build_neighborhoods(
    int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::set<int>> adj(n);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw std::invalid_argument("Topology: edge index out of range");
    }
    if (a == b) {
      throw std::invalid_argument("Topology: self-loop at agent " +
                                  std::to_string(a));
    }
    adj[a].insert(b);
    adj[b].insert(a);
  }

  // breadth-first reachability from agent 0
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int visited = 1;
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int u : adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++visited;
        frontier.push(u);
      }
    }
  }
  if (visited != n) {
    throw std::invalid_argument("Topology: graph is not connected (" +
                                std::to_string(visited) + " of " +
                                std::to_string(n) + " agents reachable)");
  }

  std::vector<std::vector<int>> nbhd(n);
  for (int i = 0; i < n; ++i) {
    nbhd[i].reserve(adj[i].size() + 1);
    nbhd[i].push_back(i);
    nbhd[i].insert(nbhd[i].end(), adj[i].begin(), adj[i].end());
    std::sort(nbhd[i].begin(), nbhd[i].end());
  }
  return nbhd;
}

void check_positive(int n) {
  if (n < 1) throw std::invalid_argument("Topology: need at least one agent");
}

}  // namespace

Topology::Topology(int n_agents, GraphKind kind,
                   std::vector<std::vector<int>> neighborhoods)
    : n_agents_(n_agents), kind_(kind),
      neighborhoods_(std::move(neighborhoods)) {}

Topology Topology::complete(int n_agents) {
  check_positive(n_agents);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n_agents; ++i) {
    for (int j = i + 1; j < n_agents; ++j) edges.emplace_back(i, j);
  }
  return Topology(n_agents, GraphKind::complete,
                  build_neighborhoods(n_agents, edges));
}

Topology Topology::ring(int n_agents) {
  check_positive(n_agents);
  std::vector<std::pair<int, int>> edges;
  if (n_agents == 2) {
    edges.emplace_back(0, 1);
  } else if (n_agents > 2) {
    for (int i = 0; i < n_agents; ++i) edges.emplace_back(i, (i + 1) % n_agents);
  }
  return Topology(n_agents, GraphKind::ring,
                  build_neighborhoods(n_agents, edges));
}

Topology Topology::star(int n_agents) {
  check_positive(n_agents);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n_agents; ++i) edges.emplace_back(0, i);
  return Topology(n_agents, GraphKind::star,
                  build_neighborhoods(n_agents, edges));
}

Topology Topology::custom(int n_agents,
                          const std::vector<std::pair<int, int>>& edges) {
  check_positive(n_agents);
  return Topology(n_agents, GraphKind::custom,
                  build_neighborhoods(n_agents, edges));
}

const std::vector<int>& Topology::neighborhood(int i) const {
  if (i < 0 || i >= n_agents_) {
    throw std::out_of_range("Topology: agent index " + std::to_string(i) +
                            " out of range");
  }
  return neighborhoods_[i];
}

int Topology::degree(int i) const {
  return static_cast<int>(neighborhood(i).size()) - 1;
}

}  // namespace dol
