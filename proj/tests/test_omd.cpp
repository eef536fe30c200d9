#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "antijam/omd.hpp"
#include "antijam/rng.hpp"

using namespace antijam;

namespace {

std::vector<double> random_grad(std::size_t n, Rng& rng, double scale = 1.0) {
  std::vector<double> g(n);
  for (auto& v : g) v = scale * rng.uniform();
  return g;
}

Strategy random_strategy(std::size_t n, Rng& rng) {
  std::vector<double> p(n);
  for (auto& v : p) v = 0.01 + rng.uniform();
  double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& v : p) v /= s;
  return Strategy(p);
}

}  // namespace

TEST_CASE("strategy validation") {
  CHECK_NOTHROW(Strategy({0.25, 0.75}));
  CHECK_THROWS_AS(Strategy({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(Strategy({-0.1, 1.1}), std::invalid_argument);
  Strategy u = Strategy::uniform(4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(u[i] == doctest::Approx(0.25));
  Strategy e = Strategy::one_hot(3, 1);
  CHECK(e[1] == 1.0);
  CHECK(e[0] == 0.0);
}

TEST_CASE("omd_step hand values") {
  Strategy x({0.5, 0.5});
  std::vector<double> g{1.0, 0.0};
  Strategy y = omd_step(x, g, std::numbers::ln2);
  CHECK(y[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(y[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  std::vector<double> zero{0.0, 0.0};
  Strategy z = omd_step(x, zero, 5.0);
  CHECK(z[0] == x[0]);

  std::vector<double> nan{std::nan(""), 0.0};
  CHECK_THROWS(omd_step(x, nan, 1.0));
  std::vector<double> inf{INFINITY, 0.0};
  CHECK_THROWS(omd_step(x, inf, 1.0));
}

TEST_CASE("learning rates") {
  CHECK(eta_static(10000, 81, 0).eta == doctest::Approx(0.020963).epsilon(1e-4));
  CHECK(eta_static(1, std::numbers::e, 0).eta == doctest::Approx(1.0));
  CHECK(eta_static(100, 81, 1).eta == doctest::Approx(eta_static(100, 81, 0).eta / std::sqrt(2.0)));
  CHECK(eta_universal(10000, 81, 9, 0).eta == doctest::Approx(0.062889).epsilon(1e-4));
  CHECK(eta_universal(10000, 81, 1, 0.3).eta == doctest::Approx(eta_static(10000, 81, 0.3).eta));
  CHECK(eta_universal(500, 81, 16, 0).eta == doctest::Approx(4 * eta_universal(500, 81, 1, 0).eta));
  CHECK_NOTHROW(LearningRate(0.0));
  CHECK_THROWS(LearningRate(-1.0));
  CHECK_THROWS(LearningRate(INFINITY));
}

TEST_CASE("sample_action") {
  Rng rng(3);
  Strategy e = Strategy::one_hot(81, 17);
  for (int i = 0; i < 1000; ++i) CHECK(sample_action(e, rng) == 17);

  // Binomial oracle: each of 81 cells within 4 standard errors of 1/81.
  Strategy u = Strategy::uniform(81);
  std::vector<std::size_t> counts(81, 0);
  const std::size_t draws = 1'000'000;
  for (std::size_t i = 0; i < draws; ++i) ++counts[sample_action(u, rng)];
  const double p = 1.0 / 81, se = std::sqrt(p * (1 - p) / draws);
  for (auto c : counts) CHECK(std::abs(static_cast<double>(c) / draws - p) <= 4 * se);

  Rng a(99), b(99);
  Strategy x({0.1, 0.2, 0.3, 0.4});
  for (int i = 0; i < 100; ++i) CHECK(sample_action(x, a) == sample_action(x, b));
}

TEST_CASE("property: omd_step stays on the simplex") {
  Rng rng(5);
  for (int rep = 0; rep < 300; ++rep) {
    Strategy x = random_strategy(81, rng);
    auto g = random_grad(81, rng, 50.0);
    Strategy y = omd_step(x, g, 0.5 + 20 * rng.uniform());
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      CHECK(y[i] >= 0.0);
      s += y[i];
    }
    CHECK(std::abs(s - 1.0) <= 1e-9);
  }
}

TEST_CASE("property: shift invariance") {
  Rng rng(6);
  for (int rep = 0; rep < 100; ++rep) {
    Strategy x = random_strategy(20, rng);
    auto g = random_grad(20, rng);
    double kappa = 100 * (rng.uniform() - 0.5);
    auto gk = g;
    for (auto& v : gk) v += kappa;
    Strategy a = omd_step(x, g, 0.7), b = omd_step(x, gk, 0.7);
    for (std::size_t i = 0; i < 20; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12);
  }
}

TEST_CASE("property: lower gradient means larger multiplicative gain") {
  Rng rng(8);
  for (int rep = 0; rep < 100; ++rep) {
    Strategy x = random_strategy(10, rng);
    auto g = random_grad(10, rng);
    Strategy y = omd_step(x, g, 1.3);
    for (std::size_t i = 0; i < 10; ++i) {
      for (std::size_t j = 0; j < 10; ++j) {
        if (g[i] < g[j]) CHECK(y[i] / x[i] > y[j] / x[j]);
      }
    }
  }
}

TEST_CASE("property: two steps compose into one") {
  Rng rng(9);
  for (int rep = 0; rep < 100; ++rep) {
    Strategy x = random_strategy(30, rng);
    auto g1 = random_grad(30, rng), g2 = random_grad(30, rng);
    std::vector<double> sum(30);
    for (std::size_t i = 0; i < 30; ++i) sum[i] = g1[i] + g2[i];
    Strategy two = omd_step(omd_step(x, g1, 0.9), g2, 0.9);
    Strategy one = omd_step(x, sum, 0.9);
    for (std::size_t i = 0; i < 30; ++i) CHECK(std::abs(two[i] - one[i]) <= 1e-10);
  }
}

TEST_CASE("exp weights matches repeated omd_step and never collapses") {
  Rng rng(10);
  ExpWeights w(12);
  Strategy x = Strategy::uniform(12);
  for (int n = 0; n < 200; ++n) {
    auto g = random_grad(12, rng);
    w.step(g, 0.4);
    x = omd_step(x, g, 0.4);
  }
  for (std::size_t i = 0; i < 12; ++i) CHECK(w.probs()[i] == doctest::Approx(x[i]).epsilon(1e-9));

  // A long run against a fixed gradient gap: linear-domain weights would underflow.
  ExpWeights v(3);
  std::vector<double> g{0.0, 1.0, 1.0};
  for (int n = 0; n < 1'000'000; ++n) v.step(g, 1.0);
  CHECK(v.probs()[0] == doctest::Approx(1.0));
  CHECK(std::isfinite(v.log_probs()[1]));
  CHECK(v.log_probs()[1] < -9e5);
}
