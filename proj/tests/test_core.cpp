#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <queue>
#include <set>

#include "dol/matrix.hpp"
#include "dol/rng.hpp"
#include "dol/sparse_vector.hpp"
#include "dol/topology.hpp"

using namespace dol;

TEST_CASE("sparse vector invariants") {
  SparseVector v({{0, 0.5}, {2, 2.0}}, 3);
  CHECK(v.dim() == 3);
  CHECK(v.at(0) == 0.5);
  CHECK(v.at(1) == 0.0);
  CHECK(v.at(2) == 2.0);

  CHECK_THROWS_AS(SparseVector({{1, 1.0}, {1, 2.0}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(SparseVector({{2, 1.0}, {1, 2.0}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(SparseVector({{3, 1.0}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(SparseVector({{0, 0.0}}, 3), std::invalid_argument);
}

TEST_CASE("sparse dot and add_scaled") {
  SparseVector v({{0, 2.0}, {2, -1.0}}, 3);
  std::vector<double> w{1.0, 5.0, 4.0};
  CHECK(v.dot(w) == doctest::Approx(2.0 - 4.0));

  std::vector<double> acc{0.0, 0.0, 0.0};
  add_scaled(acc, v, 3.0);
  CHECK(acc[0] == 6.0);
  CHECK(acc[1] == 0.0);
  CHECK(acc[2] == -3.0);
}

TEST_CASE("neighborhood shapes") {
  Topology complete = Topology::complete(4);
  CHECK(complete.neighborhood(2) == std::vector<int>{0, 1, 2, 3});

  Topology ring = Topology::ring(4);
  CHECK(ring.neighborhood(0) == std::vector<int>{0, 1, 3});

  Topology star = Topology::star(4);
  CHECK(star.neighborhood(3) == std::vector<int>{0, 3});
  CHECK(star.neighborhood(0) == std::vector<int>{0, 1, 2, 3});

  CHECK_THROWS_AS(complete.neighborhood(4), std::out_of_range);
}

TEST_CASE("neighborhood always contains self, size = degree + 1") {
  for (int n : {1, 2, 3, 5, 8}) {
    for (const Topology& topo :
         {Topology::complete(n), Topology::ring(n), Topology::star(n)}) {
      for (int i = 0; i < n; ++i) {
        const std::vector<int>& nbhd = topo.neighborhood(i);
        CHECK(std::find(nbhd.begin(), nbhd.end(), i) != nbhd.end());
        CHECK(static_cast<int>(nbhd.size()) == topo.degree(i) + 1);
      }
    }
  }
}

TEST_CASE("every constructed topology is reachable from agent 0") {
  for (int n : {1, 2, 3, 4, 7}) {
    for (const Topology& topo :
         {Topology::complete(n), Topology::ring(n), Topology::star(n),
          Topology::custom(n, [&] {
            std::vector<std::pair<int, int>> chain;
            for (int i = 0; i + 1 < n; ++i) chain.emplace_back(i, i + 1);
            return chain;
          }())}) {
      std::set<int> seen{0};
      std::queue<int> frontier;
      frontier.push(0);
      while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop();
        for (int u : topo.neighborhood(v)) {
          if (seen.insert(u).second) frontier.push(u);
        }
      }
      CHECK(static_cast<int>(seen.size()) == n);
    }
  }
}

TEST_CASE("invalid topologies rejected") {
  CHECK_THROWS_AS(Topology::custom(4, {{0, 1}, {2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Topology::custom(3, {{0, 0}, {0, 1}, {1, 2}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Topology::custom(3, {{0, 5}}), std::invalid_argument);
  CHECK_THROWS_AS(Topology::complete(0), std::invalid_argument);
}

TEST_CASE("matrix rows are disjoint views") {
  Matrix m(2, 3, 1.0);
  m.row(0)[1] = 7.0;
  CHECK(m(0, 1) == 7.0);
  CHECK(m(1, 1) == 1.0);
  CHECK(m.row(1).size() == 3);
}

TEST_CASE("rng helpers") {
  CHECK(mix_seed(42, 0) != mix_seed(42, 1));
  CHECK(mix_seed(42, 0) != mix_seed(43, 0));

  Rng rng(7);
  for (int k = 0; k < 1000; ++k) {
    const double u = uniform01(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  Rng a(9), b(9);
  for (int k = 0; k < 100; ++k) CHECK(uniform_index(a, 13) == uniform_index(b, 13));
  Rng c(11);
  for (int k = 0; k < 1000; ++k) CHECK(uniform_index(c, 5) < 5);
}
