#include "antijam/omd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace antijam {

Strategy::Strategy(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("Strategy: empty");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("Strategy: negative or non-finite entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) throw std::invalid_argument("Strategy: entries must sum to 1");
}

Strategy Strategy::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Strategy: empty");
  return Strategy(std::vector<double>(n, 1.0 / static_cast<double>(n)), Unchecked{});
}

Strategy Strategy::one_hot(std::size_t n, std::size_t idx) {
  if (idx >= n) throw std::out_of_range("Strategy::one_hot: index out of range");
  std::vector<double> p(n, 0.0);
  p[idx] = 1.0;
  return Strategy(std::move(p), Unchecked{});
}

LearningRate::LearningRate(double value) : eta(value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument("LearningRate: eta must be finite and non-negative");
  }
}

LearningRate eta_static(std::size_t rounds, double num_actions, double sigma) {
  return eta_universal(rounds, num_actions, 1.0, sigma);
}

LearningRate eta_universal(std::size_t rounds, double num_actions, double history_size,
                           double sigma) {
  if (rounds < 1) throw std::invalid_argument("eta: rounds must be >= 1");
  if (!(num_actions > 1.0)) throw std::invalid_argument("eta: need more than one action");
  if (!(history_size >= 1.0)) throw std::invalid_argument("eta: history size must be >= 1");
  if (!(sigma >= 0.0)) throw std::invalid_argument("eta: sigma must be >= 0");
  double denom = (sigma * sigma + 1.0) * static_cast<double>(rounds);
  return LearningRate(std::sqrt(history_size * std::log(num_actions) / denom));
}

namespace {

void check_gradient(std::span<const double> grad, std::size_t n) {
  if (grad.size() != n) throw std::invalid_argument("omd_step: gradient dimension mismatch");
  for (double g : grad) {
    if (!std::isfinite(g)) throw std::invalid_argument("omd_step: non-finite gradient entry");
  }
}

// Normalizes log-weights in place and writes the matching probabilities.
void normalize_log(std::vector<double>& logw, std::vector<double>& probs) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : logw) mx = std::max(mx, v);
  probs.resize(logw.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logw.size(); ++i) {
    probs[i] = std::exp(logw[i] - mx);
    sum += probs[i];
  }
  double log_norm = mx + std::log(sum);
  for (std::size_t i = 0; i < logw.size(); ++i) {
    logw[i] -= log_norm;
    probs[i] /= sum;
  }
}

}  // namespace

Strategy omd_step(const Strategy& x, std::span<const double> grad, double eta) {
  check_gradient(grad, x.size());
  std::vector<double> logw(x.size());
  for (std::size_t a = 0; a < x.size(); ++a) {
    logw[a] = x[a] > 0.0 ? std::log(x[a]) - eta * grad[a] : -std::numeric_limits<double>::infinity();
  }
  std::vector<double> probs;
  normalize_log(logw, probs);
  return Strategy(std::move(probs), Strategy::Unchecked{});
}

ExpWeights::ExpWeights(std::size_t n)
    : log_probs_(n, -std::log(static_cast<double>(n))), probs_(n, 1.0 / static_cast<double>(n)) {
  if (n == 0) throw std::invalid_argument("ExpWeights: empty");
}

void ExpWeights::step(std::span<const double> grad, double eta) {
  check_gradient(grad, log_probs_.size());
  for (std::size_t a = 0; a < log_probs_.size(); ++a) log_probs_[a] -= eta * grad[a];
  normalize_log(log_probs_, probs_);
}

std::size_t sample_action(std::span<const double> x, Rng& rng) {
  if (x.empty()) throw std::invalid_argument("sample_action: empty strategy");
  double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    acc += x[a];
    if (u < acc) return a;
  }
  // Rounding left the CDF just below 1: return the last action with mass.
  for (std::size_t a = x.size(); a-- > 0;) {
    if (x[a] > 0.0) return a;
  }
  return x.size() - 1;
}

}  // namespace antijam
