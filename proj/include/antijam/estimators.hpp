#pragma once

// Unbiased gradient estimators for the radar's cost vector l_n = U y_n:
//   importance weighting (bandit feedback only),
//   action modeling (column of U at the observed jammer action),
//   opponent modeling (U times a history-conditioned MLE of the jammer).

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "antijam/game.hpp"
#include "antijam/history.hpp"
#include "antijam/rng.hpp"

namespace antijam {

using GradientEstimate = std::vector<double>;

/// Smallest strategy mass IWE will divide by.
inline constexpr double kIweFloor = 1e-12;

/// realized_cost / x(played) at `played`, zero elsewhere.
GradientEstimate iwe(std::size_t played, double realized_cost, std::span<const double> x);

/// U_hat[:, observed].
GradientEstimate ame(std::size_t observed, const CostMatrix& u_hat);

/// Count-based MLE of pi(. | h). Storage is lazy: only visited histories exist.
class OpponentModel {
 public:
  explicit OpponentModel(std::size_t num_jammer_actions) : n_actions_(num_jammer_actions) {}

  std::size_t num_jammer_actions() const { return n_actions_; }
  std::size_t num_histories() const { return table_.size(); }

  void update(const HistoryKey& h, std::size_t next_jam);
  std::uint64_t total(const HistoryKey& h) const;
  std::uint64_t count(const HistoryKey& h, std::size_t b) const;

  /// Empirical distribution; empty when h has never been seen (uniform).
  SparseDist sparse_query(const HistoryKey& h) const;
  /// Dense pi_hat(. | h), uniform for unseen h.
  std::vector<double> query(const HistoryKey& h) const;

  /// Visits every stored history with its total count.
  template <typename F>
  void for_each(F&& f) const {
    for (const auto& [h, e] : table_) f(h, e.total);
  }

 private:
  struct Entry {
    std::vector<std::pair<std::size_t, std::uint64_t>> counts;  // sorted by action
    std::uint64_t total = 0;
  };

  std::size_t n_actions_;
  std::unordered_map<HistoryKey, Entry, HistoryKeyHash> table_;
};

inline void mle_update(OpponentModel& model, const HistoryKey& h, std::size_t next_jam) {
  model.update(h, next_jam);
}
inline std::vector<double> mle_query(const OpponentModel& model, const HistoryKey& h) {
  return model.query(h);
}

/// U_hat * pi_hat(h) from a sparse model output (empty = uniform).
GradientEstimate ome(const SparseDist& pi_hat, const CostMatrix& u_hat);
GradientEstimate ome(const HistoryKey& h, const OpponentModel& model, const CostMatrix& u_hat);
/// Allocation-free variant used in the trial loop.
void ome_into(const SparseDist& pi_hat, const CostMatrix& u_hat, std::vector<double>& out);

/// Estimated scenario parameters and the cost matrix the learner actually uses.
struct ThetaEstimate {
  ScenarioParams params;
  double noise_sigma = 0.0;
  CostMatrix cost_matrix;
};

/// E[U_hat] = U with Var[U_hat[a,b]] <= sigma^2: each entry gets zero-mean
/// Gaussian noise of std sigma, truncated symmetrically so the perturbed entry
/// stays in [-0.5, 1.5]. sigma = 0 returns U unchanged.
CostMatrix perturb_cost_matrix(const CostMatrix& u, double sigma, Rng& rng);
ThetaEstimate perturb_theta(const ScenarioParams& theta, const CostMatrix& u, double sigma, Rng& rng);

/// Half-width of the symmetric truncation window for an entry with mean v.
double truncation_half_width(double v);

}  // namespace antijam
