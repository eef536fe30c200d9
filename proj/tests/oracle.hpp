#pragma once

// Brute-force reference for small games: an independent re-implementation of
// the learners in the linear weight domain plus exhaustive comparators.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "antijam/harness.hpp"

namespace oracle {

using Pair = std::pair<std::size_t, std::size_t>;

struct Game {
  std::size_t R = 0, J = 0;
  std::vector<double> u;  // row-major R x J
  /// k = 1 rule: previous (a, b) -> dense y over J.
  std::map<Pair, std::vector<double>> pi;
  Pair init{0, 0};
  double eta = 0.5;
  antijam::Algorithm alg = antijam::Algorithm::OmdAme;

  double at(std::size_t a, std::size_t b) const { return u[a * J + b]; }
  std::vector<double> uy(const std::vector<double>& y) const {
    std::vector<double> v(R, 0.0);
    for (std::size_t a = 0; a < R; ++a)
      for (std::size_t b = 0; b < J; ++b) v[a] += at(a, b) * y[b];
    return v;
  }
};

/// Learner state: weights per history (one shared entry unless OME) and MLE counts.
struct Learner {
  std::map<Pair, std::vector<double>> x;
  std::map<Pair, std::vector<double>> counts;

  Pair slot(const Game& g, Pair prev) const {
    return g.alg == antijam::Algorithm::OmdOme ? prev : Pair{0, 0};
  }
  std::vector<double> strategy(const Game& g, Pair prev) const {
    auto it = x.find(slot(g, prev));
    return it == x.end() ? std::vector<double>(g.R, 1.0 / static_cast<double>(g.R)) : it->second;
  }
  void update(const Game& g, Pair prev, std::size_t a, std::size_t b) {
    std::vector<double> cur = strategy(g, prev);
    std::vector<double> grad(g.R, 0.0);
    switch (g.alg) {
      case antijam::Algorithm::OmdIwe:
        grad[a] = g.at(a, b) / cur[a];
        break;
      case antijam::Algorithm::OmdAme:
        for (std::size_t i = 0; i < g.R; ++i) grad[i] = g.at(i, b);
        break;
      case antijam::Algorithm::OmdOme: {
        auto& c = counts.try_emplace(prev, std::vector<double>(g.J, 0.0)).first->second;
        c[b] += 1.0;
        double tot = 0.0;
        for (double v : c) tot += v;
        std::vector<double> pihat(g.J);
        for (std::size_t j = 0; j < g.J; ++j) pihat[j] = c[j] / tot;
        grad = g.uy(pihat);
        break;
      }
    }
    double z = 0.0;
    for (std::size_t i = 0; i < g.R; ++i) {
      cur[i] *= std::exp(-g.eta * grad[i]);
      z += cur[i];
    }
    for (auto& v : cur) v /= z;
    x[slot(g, prev)] = cur;
  }
};

struct PathValues {
  std::vector<std::vector<double>> x;
  std::vector<double> phi, best, static_cmp, universal_cmp, static_regret, universal_regret;
  std::vector<std::size_t> x_star;
};

/// Min over every pure comparator sequence s_1..s_n of sum_j (U y_j)(s_j).
inline double brute_universal(const std::vector<std::vector<double>>& uys) {
  const std::size_t n = uys.size(), R = uys.empty() ? 0 : uys[0].size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= R;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t code = 0; code < total; ++code) {
    double s = 0.0;
    std::size_t c = code;
    for (std::size_t j = 0; j < n; ++j, c /= R) s += uys[j][c % R];
    best = std::min(best, s);
  }
  return best;
}

/// Values along a realized path of (a_n, b_n).
inline PathValues evaluate_path(const Game& g, const std::vector<Pair>& path) {
  PathValues out;
  Learner L;
  Pair prev = g.init;
  std::vector<std::vector<double>> uys;
  double sum_phi = 0.0;
  for (std::size_t n = 1; n <= path.size(); ++n) {
    const auto& y = g.pi.at(prev);
    auto x = L.strategy(g, prev);
    auto uy = g.uy(y);
    uys.push_back(uy);
    double phi = 0.0;
    for (std::size_t a = 0; a < g.R; ++a) phi += x[a] * uy[a];
    sum_phi += phi;

    double cmp = std::numeric_limits<double>::infinity();
    std::size_t star = 0;
    for (std::size_t a = 0; a < g.R; ++a) {
      double s = 0.0;
      for (const auto& v : uys) s += v[a];
      if (s < cmp) {
        cmp = s;
        star = a;
      }
    }
    double ucmp = brute_universal(uys);
    out.x.push_back(x);
    out.phi.push_back(phi);
    out.best.push_back(*std::min_element(uy.begin(), uy.end()));
    out.static_cmp.push_back(cmp);
    out.universal_cmp.push_back(ucmp);
    out.x_star.push_back(star);
    out.static_regret.push_back((sum_phi - cmp) / static_cast<double>(n));
    out.universal_regret.push_back((sum_phi - ucmp) / static_cast<double>(n));

    auto [a, b] = path[n - 1];
    L.update(g, prev, a, b);
    prev = {a, b};
  }
  return out;
}

struct Expectation {
  double static_regret = 0.0;
  double universal_regret = 0.0;
  double mass = 0.0;
};

/// Exact expectation of the final average regrets over every (a, b) path.
inline Expectation expected_final_regret(const Game& g, std::size_t N) {
  Expectation e;
  std::function<void(std::size_t, const Learner&, Pair, double, double, std::vector<double>, double)> dfs;
  dfs = [&](std::size_t n, const Learner& L, Pair prev, double prob, double sum_phi, std::vector<double> cum,
            double sum_best) {
    if (n > N) {
      double cmp = *std::min_element(cum.begin(), cum.end());
      e.static_regret += prob * (sum_phi - cmp) / static_cast<double>(N);
      e.universal_regret += prob * (sum_phi - sum_best) / static_cast<double>(N);
      e.mass += prob;
      return;
    }
    const auto& y = g.pi.at(prev);
    auto x = L.strategy(g, prev);
    auto uy = g.uy(y);
    double phi = 0.0;
    for (std::size_t a = 0; a < g.R; ++a) phi += x[a] * uy[a];
    for (std::size_t a = 0; a < g.R; ++a) cum[a] += uy[a];
    double best = *std::min_element(uy.begin(), uy.end());
    for (std::size_t a = 0; a < g.R; ++a) {
      if (x[a] == 0.0) continue;
      for (std::size_t b = 0; b < g.J; ++b) {
        if (y[b] == 0.0) continue;
        Learner next = L;
        next.update(g, prev, a, b);
        dfs(n + 1, next, {a, b}, prob * x[a] * y[b], sum_phi + phi, cum, sum_best + best);
      }
    }
  };
  dfs(1, Learner{}, g.init, 1.0, 0.0, std::vector<double>(g.R, 0.0), 0.0);
  return e;
}

/// Random R x R game whose k = 1 rule puts mass on two actions per history.
template <typename Rng>
Game random_game(std::size_t R, Rng& rng) {
  Game g;
  g.R = g.J = R;
  g.u.resize(R * R);
  for (auto& v : g.u) v = rng.uniform();
  for (std::size_t a = 0; a < R; ++a) {
    for (std::size_t b = 0; b < R; ++b) {
      auto below = [&](std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(rng.uniform() * n)); };
      std::size_t first = below(R);
      std::size_t second = (first + 1 + below(R - 1)) % R;
      double p = 0.05 + 0.9 * rng.uniform();
      std::vector<double> y(R, 0.0);
      y[first] = p;
      y[second] = 1.0 - p;
      g.pi[{a, b}] = y;
    }
  }
  return g;
}

/// Harness configuration for the same game: L = R frequencies, one subpulse, no specials.
inline antijam::ExperimentConfig harness_config(const Game& g, std::size_t N, std::size_t T) {
  using namespace antijam;
  ExperimentConfig cfg;
  cfg.offsets_hz.clear();
  for (std::size_t i = 0; i < g.R; ++i) cfg.offsets_hz.push_back(1e6 * static_cast<double>(i + 1));
  cfg.subpulses = 1;
  cfg.specials.clear();
  cfg.initial_radar = {static_cast<FreqIndex>(g.init.first)};
  cfg.initial_jammer = {static_cast<FreqIndex>(g.init.second)};
  std::vector<std::vector<double>> rows(g.R, std::vector<double>(g.J));
  for (std::size_t a = 0; a < g.R; ++a)
    for (std::size_t b = 0; b < g.J; ++b) rows[a][b] = g.at(a, b);
  cfg.cost_matrix = CostMatrix::from_rows(rows);
  TableRule t;
  t.k = 1;
  for (const auto& [h, y] : g.pi) {
    SparseDist d;
    for (std::size_t b = 0; b < g.J; ++b)
      if (y[b] > 0) d.emplace_back(b, y[b]);
    t.table[HistoryKey{{{static_cast<std::uint32_t>(h.first), static_cast<std::uint32_t>(h.second)}}}] = d;
  }
  cfg.jammer.type = "table";
  cfg.jammer.table = t;
  cfg.algorithm = g.alg;
  if (g.alg == Algorithm::OmdOme) cfg.k = 1;
  cfg.eta = g.eta;
  cfg.rounds = N;
  cfg.trials = T;
  cfg.threads = 1;
  return cfg;
}

}  // namespace oracle
