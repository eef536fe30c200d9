#pragma once

// Strategies on the probability simplex and the entropic mirror-descent
// (exponential weights) update.

#include <cstddef>
#include <span>
#include <vector>

#include "antijam/rng.hpp"

namespace antijam {

class Strategy {
 public:
  static constexpr double kSumTolerance = 1e-9;

  /// Validates non-negativity and unit mass.
  explicit Strategy(std::vector<double> probs);
  static Strategy uniform(std::size_t n);
  static Strategy one_hot(std::size_t n, std::size_t idx);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

 private:
  struct Unchecked {};
  Strategy(std::vector<double> probs, Unchecked) : probs_(std::move(probs)) {}
  friend Strategy omd_step(const Strategy&, std::span<const double>, double);
  friend class ExpWeights;

  std::vector<double> probs_;
};

/// Constant learning rate. Zero is accepted and freezes the learner.
struct LearningRate {
  double eta = 0.0;
  explicit LearningRate(double value);
};

/// sqrt(ln|A_R| / ((sigma^2 + 1) N)).
LearningRate eta_static(std::size_t rounds, double num_actions, double sigma);
/// sqrt(|H| ln|A_R| / ((sigma^2 + 1) N)).
LearningRate eta_universal(std::size_t rounds, double num_actions, double history_size,
                           double sigma);

/// x'(a) proportional to x(a) exp(-eta grad(a)), evaluated in the log domain
/// with max-subtraction. Throws on non-finite gradient entries.
Strategy omd_step(const Strategy& x, std::span<const double> grad, double eta);

/// Exponential-weights learner that keeps normalized log-probabilities, so
/// entries never underflow to zero however long it runs.
class ExpWeights {
 public:
  explicit ExpWeights(std::size_t n);

  std::size_t size() const { return log_probs_.size(); }
  void step(std::span<const double> grad, double eta);
  /// Current probabilities, recomputed after each step.
  std::span<const double> probs() const { return probs_; }
  std::span<const double> log_probs() const { return log_probs_; }
  Strategy strategy() const { return Strategy(probs_, Strategy::Unchecked{}); }

 private:
  std::vector<double> log_probs_;
  std::vector<double> probs_;
};

/// Inverse-CDF draw a ~ x.
std::size_t sample_action(std::span<const double> x, Rng& rng);
inline std::size_t sample_action(const Strategy& x, Rng& rng) { return sample_action(x.probs(), rng); }

}  // namespace antijam
