#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "dol/omd.hpp"
#include "dol/rng.hpp"
#include "helpers.hpp"

using namespace dol;
using dol::testing::example;

namespace {

struct Instance {
  std::vector<std::vector<double>> w;
  std::vector<std::vector<double>> g;
  std::vector<NeighborState> views;
};

Instance random_instance(Rng& rng, int k, int dim) {
  Instance inst;
  inst.w.resize(k);
  inst.g.resize(k);
  for (int j = 0; j < k; ++j) {
    inst.w[j].resize(dim);
    inst.g[j].resize(dim);
    for (int d = 0; d < dim; ++d) {
      inst.w[j][d] = uniform_in(rng, 0.1, 2.0);
      inst.g[j][d] = uniform_in(rng, -1.0, 1.0);
    }
  }
  for (int j = 0; j < k; ++j) inst.views.push_back({inst.w[j], inst.g[j]});
  return inst;
}

double central_difference(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> point, int d, double h) {
  point[d] += h;
  const double up = f(point);
  point[d] -= 2 * h;
  const double down = f(point);
  return (up - down) / (2 * h);
}

}  // namespace

TEST_CASE("losses") {
  const LabeledExample ex = example({1.0, 0.0}, -1);
  CHECK(ogd_loss(std::vector<double>{0.0, 0.0}, example({0.3, 0.4}, 1), 1.0) ==
        doctest::Approx(1.0));
  // margin >= 1 leaves only the regularizer
  CHECK(ogd_loss(std::vector<double>{1.0, 1.0}, example({1.0, 1.0}, 1), 5.0) ==
        doctest::Approx(1.0));
  CHECK(ogd_loss(std::vector<double>{1.0, 0.0}, ex, 2.0) ==
        doctest::Approx(4.5));
  CHECK(hinge_loss(std::vector<double>{1.0, 0.0}, ex) == doctest::Approx(2.0));
}

TEST_CASE("hinge subgradient cases") {
  // satisfied margin, no regularizer: exactly zero
  auto g0 = hinge_subgradient(std::vector<double>{2.0, 0.0},
                              example({1.0, 0.0}, 1), 1.0, false);
  CHECK(g0 == std::vector<double>{0.0, 0.0});

  auto g1 = hinge_subgradient(std::vector<double>{0.0, 0.0},
                              example({1.0, 2.0}, 1), 1.0, false);
  CHECK(g1 == std::vector<double>{-1.0, -2.0});

  auto g2 = hinge_subgradient(std::vector<double>{1.0, 0.0},
                              example({0.0, 1.0}, 1), 2.0, true);
  CHECK(g2[0] == doctest::Approx(1.0));
  CHECK(g2[1] == doctest::Approx(-2.0));
}

TEST_CASE("analytic subgradient matches finite differences off the kink") {
  Rng rng(11);
  const double h = 1e-5;
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + static_cast<int>(uniform_index(rng, 3));
    std::vector<double> w(dim), xv(dim);
    for (int d = 0; d < dim; ++d) {
      w[d] = uniform_in(rng, -1.5, 1.5);
      xv[d] = uniform_in(rng, -1.0, 1.0);
    }
    const int label = uniform01(rng) < 0.5 ? 1 : -1;
    const LabeledExample ex = example(xv, label);
    const double C = 2.5;
    const double margin = 1.0 - label * ex.features.dot(w);
    if (std::abs(margin) < 1e-3) continue;  // stay clear of the hinge kink
    ++checked;

    auto f = [&](std::span<const double> p) { return ogd_loss(p, ex, C); };
    auto grad = hinge_subgradient(w, ex, C, true);
    for (int d = 0; d < dim; ++d) {
      const double fd = central_difference(f, w, d, h);
      CHECK(grad[d] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("gradient-descent update") {
  Instance inst;
  inst.w = {{0.0, 0.0}, {0.0, 0.0}};
  inst.g = {{1.0, 0.0}, {0.0, 1.0}};
  inst.views = {{inst.w[0], inst.g[0]}, {inst.w[1], inst.g[1]}};
  CHECK(dogd_update(inst.views, 1.0) == std::vector<double>{-0.5, -0.5});

  Rng rng(12);
  Instance means = random_instance(rng, 3, 4);
  for (auto& g : means.g) std::fill(g.begin(), g.end(), 0.0);
  auto out = dogd_update(means.views, 0.3);
  for (int d = 0; d < 4; ++d) {
    CHECK(out[d] == doctest::Approx((means.w[0][d] + means.w[1][d] +
                                     means.w[2][d]) / 3.0));
  }

  Instance solo = random_instance(rng, 1, 3);
  auto step = dogd_update(solo.views, 0.25);
  for (int d = 0; d < 3; ++d) {
    CHECK(step[d] ==
          doctest::Approx(solo.w[0][d] - 0.25 * solo.g[0][d]));
  }
}

TEST_CASE("exponentiated update") {
  // zero gradients, inside the ball: geometric mean of the weights
  Instance inst;
  inst.w = {{1.0, 4.0}, {4.0, 1.0}};
  inst.g = {{0.0, 0.0}, {0.0, 0.0}};
  inst.views = {{inst.w[0], inst.g[0]}, {inst.w[1], inst.g[1]}};
  auto gm = doeg_update(inst.views, 0.5, 100.0);
  CHECK(gm[0] == doctest::Approx(2.0));
  CHECK(gm[1] == doctest::Approx(2.0));

  Instance solo;
  solo.w = {{1.0, 1.0}};
  solo.g = {{1.0, -1.0}};
  solo.views = {{solo.w[0], solo.g[0]}};
  auto out = doeg_update(solo.views, std::log(2.0), 1e9);
  CHECK(out[0] == doctest::Approx(0.5));
  CHECK(out[1] == doctest::Approx(2.0));

  Instance ball;
  ball.w = {{3.0, 1.0}};
  ball.g = {{0.0, 0.0}};
  ball.views = {{ball.w[0], ball.g[0]}};
  auto scaled = doeg_update(ball.views, 1.0, 2.0);
  CHECK(scaled[0] == doctest::Approx(1.5));
  CHECK(scaled[1] == doctest::Approx(0.5));

  Instance bad;
  bad.w = {{1.0, -1.0}};
  bad.g = {{0.0, 0.0}};
  bad.views = {{bad.w[0], bad.g[0]}};
  CHECK_THROWS_AS(doeg_update(bad.views, 1.0, 10.0), std::invalid_argument);
}

TEST_CASE("exponentiated updates stay strictly positive") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + static_cast<int>(uniform_index(rng, 4));
    const int dim = 1 + static_cast<int>(uniform_index(rng, 5));
    Instance inst = random_instance(rng, k, dim);
    const double S = uniform_in(rng, 0.5, 3.0);
    auto out = doeg_update(inst.views, uniform_in(rng, 0.01, 1.0), S);
    double l1 = 0.0;
    for (double v : out) {
      CHECK(v > 0.0);
      l1 += v;
    }
    CHECK(l1 <= S * (1.0 + 1e-12));
  }
}

TEST_CASE("closed forms agree with the prox oracle") {
  Rng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 1 + static_cast<int>(uniform_index(rng, 4));
    const int dim = 1 + static_cast<int>(uniform_index(rng, 5));
    Instance inst = random_instance(rng, k, dim);
    for (double eta : {1.0, 0.1}) {
      auto closed = dogd_update(inst.views, eta);
      auto numeric =
          bregman_prox_oracle(inst.views, eta, Divergence::euclidean);
      for (int d = 0; d < dim; ++d) {
        CHECK(closed[d] == doctest::Approx(numeric[d]).epsilon(1e-6));
      }

      auto closed_eg = doeg_update(inst.views, eta, 0.0);  // no ball
      auto numeric_eg =
          bregman_prox_oracle(inst.views, eta, Divergence::entropy);
      for (int d = 0; d < dim; ++d) {
        CHECK(closed_eg[d] == doctest::Approx(numeric_eg[d]).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("rescaling onto the l1 ball matches the constrained prox") {
  Rng rng(15);
  for (int trial = 0; trial < 8; ++trial) {
    const int k = 1 + static_cast<int>(uniform_index(rng, 3));
    const int dim = 2 + static_cast<int>(uniform_index(rng, 3));
    Instance inst = random_instance(rng, k, dim);
    // radius chosen so the constraint actually binds
    const double S = 0.6 * dim * 0.5;
    auto closed = doeg_update(inst.views, 0.1, S);
    double l1 = 0.0;
    for (double v : closed) l1 += v;
    if (l1 < S * 0.999) continue;
    auto numeric =
        bregman_prox_oracle(inst.views, 0.1, Divergence::entropy, S, 1e-10);
    for (int d = 0; d < dim; ++d) {
      CHECK(closed[d] == doctest::Approx(numeric[d]).epsilon(1e-5));
    }
  }
}

TEST_CASE("zero gradients make the euclidean prox the centroid") {
  Rng rng(16);
  Instance inst = random_instance(rng, 4, 3);
  for (auto& g : inst.g) std::fill(g.begin(), g.end(), 0.0);
  auto numeric = bregman_prox_oracle(inst.views, 0.7, Divergence::euclidean);
  for (int d = 0; d < 3; ++d) {
    const double mean = (inst.w[0][d] + inst.w[1][d] + inst.w[2][d] +
                         inst.w[3][d]) / 4.0;
    CHECK(numeric[d] == doctest::Approx(mean).epsilon(1e-8));
  }
}

TEST_CASE("prox oracle rejects oversized problems") {
  std::vector<double> w(9, 1.0), g(9, 0.0);
  std::vector<NeighborState> views{{w, g}};
  CHECK_THROWS_AS(bregman_prox_oracle(views, 1.0, Divergence::euclidean),
                  std::invalid_argument);
}

TEST_CASE("sign prediction") {
  CHECK(omd_predict(std::vector<double>{1.0, 0.0},
                    example({2.0, 0.0}, 1).features) == 1);
  CHECK(omd_predict(std::vector<double>{0.0, 0.0},
                    example({2.0, -1.0}, 1).features) == 1);  // tie rule

  EgState balanced(2, 1.0);
  CHECK(omd_predict(balanced, example({1.0, 1.0}, 1).features) == 1);

  EgState st = EgState::from_stacked({2.0, 0.5, 0.5, 1.5});
  // effective (1.5, -1.0)
  CHECK(omd_predict(st, example({1.0, 1.0}, 1).features) == 1);
  CHECK(omd_predict(st, example({0.0, 1.0}, 1).features) == -1);
  CHECK(st.effective() == std::vector<double>{1.5, -1.0});
}

TEST_CASE("prediction is invariant to positive rescaling") {
  Rng rng(18);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> w(4), xv(4);
    for (int d = 0; d < 4; ++d) {
      w[d] = uniform_in(rng, -1.0, 1.0);
      xv[d] = uniform_in(rng, -1.0, 1.0);
    }
    const SparseVector x = example(xv, 1).features;
    const double c = uniform_in(rng, 0.001, 1000.0);
    std::vector<double> scaled = w;
    for (double& v : scaled) v *= c;
    CHECK(omd_predict(w, x) == omd_predict(scaled, x));
  }
}

TEST_CASE("regret accounting") {
  std::vector<std::vector<double>> zeros{{0.0, 0.0, 0.0}};
  auto r0 = regret_accounting(zeros, std::vector<double>{0.0});
  CHECK(r0.individual[0] == 0.0);
  CHECK(r0.social == 0.0);

  // constant excess epsilon per round over the comparator
  const double eps = 0.25;
  std::vector<std::vector<double>> excess{{1.0 + eps, 1.0 + eps, 1.0 + eps}};
  auto r1 = regret_accounting(excess, std::vector<double>{3.0});
  CHECK(r1.individual[0] == doctest::Approx(3 * eps));

  std::vector<std::vector<double>> solo{{0.5, 0.25}};
  auto r2 = regret_accounting(solo, std::vector<double>{0.125});
  CHECK(r2.social == doctest::Approx(r2.individual[0]));
  CHECK(r2.average == doctest::Approx(r2.individual[0]));

  CHECK_THROWS_AS(regret_accounting(excess, std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
  std::vector<std::vector<double>> ragged{{1.0, 2.0}, {1.0}};
  CHECK_THROWS_AS(regret_accounting(ragged, std::vector<double>{0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("learning-rate schedule") {
  CHECK(eta_schedule(1) == 1.0);
  CHECK(eta_schedule(4) == 0.5);
  CHECK(eta_schedule(100) == doctest::Approx(0.1));
}

TEST_CASE("bregman divergences") {
  std::vector<double> u{1.0, 2.0}, v{0.0, 0.0};
  CHECK(bregman_divergence(Divergence::euclidean, u, v) ==
        doctest::Approx(2.5));
  std::vector<double> p{1.0, 1.0};
  CHECK(bregman_divergence(Divergence::entropy, p, p) == doctest::Approx(0.0));
  std::vector<double> q{2.0, 0.5};
  const double expected = 2.0 * std::log(2.0) - 2.0 + 1.0 +
                          0.5 * std::log(0.5) - 0.5 + 1.0;
  CHECK(bregman_divergence(Divergence::entropy, q, p) ==
        doctest::Approx(expected));
  CHECK_THROWS_AS(bregman_divergence(Divergence::entropy, v, p),
                  std::invalid_argument);
}
