#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dol/bounds.hpp"
#include "dol/rng.hpp"

using namespace dol;

TEST_CASE("imitation cap reproduces the alpha = 1/2 constant") {
  const double coefficient =
      dwm_i_bound(1.0, 1, 1, 0.5);  // P = 1 kills the log P term
  CHECK(std::abs(coefficient - 2.4094) <= 1e-4);
  CHECK(coefficient ==
        doctest::Approx(std::log(2.0) / std::log(4.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("imitation cap, perfect best expert") {
  for (double alpha : {0.3, 0.5, 0.9}) {
    for (int P : {2, 4, 16}) {
      CHECK(dwm_i_bound(0.0, 4, P, alpha) ==
            doctest::Approx(std::log(P) / std::log(2.0 / (1.0 + alpha))));
    }
  }
}

TEST_CASE("imitation cap, frozen high-precision value") {
  // (25 ln 2 + ln 4) / ln(4/3), evaluated independently at 40 digits
  CHECK(dwm_i_bound(100.0, 4, 4, 0.5) ==
        doctest::Approx(65.05436267063664312).epsilon(1e-12));
  // consistent with the rounded 2.41 (m*/N + log2 P) form: 2.41 * 27 = 65.07
  CHECK(std::abs(dwm_i_bound(100.0, 4, 4, 0.5) - 2.41 * 27.0) < 0.02);
}

TEST_CASE("social cap") {
  // single agent: classic cap
  CHECK(dwm_social_bound(50.0, 1, 8, 0.5) ==
        doctest::Approx(dwm_i_bound(50.0, 1, 8, 0.5)));
  // adding an agent adds exactly ln P / ln(2/(1+alpha)) at fixed m*
  const double perP = std::log(4.0) / std::log(2.0 / 1.5);
  CHECK(dwm_social_bound(100.0, 5, 4, 0.5) -
            dwm_social_bound(100.0, 4, 4, 0.5) ==
        doctest::Approx(perP));
  // algebraic identity with the per-agent cap
  CHECK(dwm_social_bound(100.0, 4, 4, 0.5) ==
        doctest::Approx(4.0 * dwm_i_bound(100.0, 4, 4, 0.5)).epsilon(1e-12));
}

TEST_CASE("averaging cap") {
  // all-zero series matches the perfect-expert imitation cap
  std::vector<int> zeros(10, 0);
  CHECK(dwm_a_bound(zeros, 4, 4, 0.9) ==
        doctest::Approx(dwm_i_bound(0.0, 4, 4, 0.9)));
  // single round with every agent beaten: the term is exactly one
  std::vector<int> full{4};
  CHECK(dwm_a_bound(full, 4, 4, 0.5) ==
        doctest::Approx((1.0 + std::log(4.0)) / std::log(4.0 / 3.0)));
  // out-of-range per-round counts rejected
  std::vector<int> bad{5};
  CHECK_THROWS_AS(dwm_a_bound(bad, 4, 4, 0.5), std::invalid_argument);
}

TEST_CASE("bound evaluators are monotone in their mistake inputs") {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const int N = 1 + static_cast<int>(uniform_index(rng, 8));
    const int P = 2 + static_cast<int>(uniform_index(rng, 15));
    const double alpha = uniform_in(rng, 0.05, 0.95);
    const double m = uniform_in(rng, 0.0, 400.0);
    CHECK(dwm_i_bound(m + 1.0, N, P, alpha) > dwm_i_bound(m, N, P, alpha));
    CHECK(dwm_social_bound(m + 1.0, N, P, alpha) >
          dwm_social_bound(m, N, P, alpha));

    std::vector<int> series(20);
    for (int& v : series) v = static_cast<int>(uniform_index(rng, N + 1));
    std::vector<int> bumped = series;
    for (std::size_t k = 0; k < series.size(); ++k) {
      if (bumped[k] < N) {
        ++bumped[k];
        CHECK(dwm_a_bound(bumped, N, P, alpha) >
              dwm_a_bound(series, N, P, alpha));
        break;
      }
    }
  }
}

TEST_CASE("averaging beats imitation below the per-round threshold") {
  // per-round counts kept under N (1/(1-a) - 1/ln(1/a)); then the
  // averaging-merge cap cannot exceed the imitation cap even when the
  // best expert's total is exactly the series sum
  Rng rng(3);
  for (double alpha : {0.5, 0.7, 0.9}) {
    const double threshold =
        1.0 / (1.0 - alpha) - 1.0 / std::log(1.0 / alpha);
    for (int trial = 0; trial < 30; ++trial) {
      const int N = 4 + static_cast<int>(uniform_index(rng, 8));
      const int cap = static_cast<int>(std::floor(threshold * N));
      std::vector<int> series(50);
      long long sum = 0;
      for (int& v : series) {
        v = static_cast<int>(uniform_index(rng, cap + 1));
        sum += v;
      }
      const double a_cap = dwm_a_bound(series, N, 4, alpha);
      const double i_cap =
          dwm_i_bound(static_cast<double>(sum), N, 4, alpha);
      CHECK(a_cap <= i_cap + 1e-9);
    }
  }
}

TEST_CASE("above the threshold the ordering can flip") {
  // one round where every expert fails at the single agent: the averaging
  // term is (1-a)/a, which exceeds ln(1/a) per unit of m*
  std::vector<int> series{1};
  const double a_cap = dwm_a_bound(series, 1, 4, 0.5);
  const double i_cap = dwm_i_bound(1.0, 1, 4, 0.5);
  CHECK(a_cap > i_cap);
}

TEST_CASE("threshold evaluator") {
  CHECK(dwm_a_condition(0.25, 2) == doctest::Approx(2.0 * dwm_a_condition(0.25, 1)));
  // natural-log form approaches 2 - 1/ln 2 near one half
  CHECK(dwm_a_condition(0.499999, 1) ==
        doctest::Approx(2.0 - 1.0 / std::log(2.0)).epsilon(1e-4));
  CHECK_THROWS_AS(dwm_a_condition(0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(dwm_a_condition(0.9, 1), std::invalid_argument);
  CHECK_THROWS_AS(dwm_a_condition(0.0, 1), std::invalid_argument);
}

TEST_CASE("average-regret cap") {
  // no gradients: only the diameter term survives
  std::vector<double> silent(100, 0.0);
  CHECK(domd_avg_regret_bound(3.0, 1.0, silent, 4) ==
        doctest::Approx(30.0));

  // single agent, constant dual norm G: D sqrt(T) + (G^2/2a) sum 1/sqrt(t)
  const double G = 1.5, D = 2.0, a = 0.5;
  std::vector<double> constant(400, G);
  double harmonic_root = 0.0;
  for (int t = 1; t <= 400; ++t) harmonic_root += 1.0 / std::sqrt(double(t));
  CHECK(domd_avg_regret_bound(D, a, constant, 1) ==
        doctest::Approx(D * 20.0 + G * G / (2 * a) * harmonic_root));
  CHECK(harmonic_root <= 2.0 * 20.0);

  // orthogonal gradients of norm G across N agents: |sum|^2 = N G^2, so
  // the second term collapses to (G^2 / 2 a N) sum 1/sqrt(t)
  const int N = 8;
  std::vector<double> orthogonal(400, G * std::sqrt(double(N)));
  CHECK(domd_avg_regret_bound(D, a, orthogonal, N) ==
        doctest::Approx(D * 20.0 +
                        G * G / (2 * a * N) * harmonic_root));
}

TEST_CASE("bound inputs validation") {
  BoundInputs good;
  good.m_star = 10;
  good.m_star_series = {1, 0, 2};
  good.n_agents = 2;
  good.n_experts = 4;
  good.alpha = 0.9;
  CHECK_NOTHROW(validate(good));

  BoundInputs bad_alpha = good;
  bad_alpha.alpha = 1.0;
  CHECK_THROWS_AS(validate(bad_alpha), std::invalid_argument);

  BoundInputs overflow = good;
  overflow.m_star_series = {2, 2, 2, 2, 2, 2};
  overflow.m_star = 3;
  CHECK_THROWS_AS(validate(overflow), std::invalid_argument);

  BoundInputs range = good;
  range.m_star_series = {3};
  CHECK_THROWS_AS(validate(range), std::invalid_argument);
}
