#include "antijam/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace antijam {

GradientEstimate iwe(std::size_t played, double realized_cost, std::span<const double> x) {
  if (played >= x.size()) throw std::out_of_range("iwe: action index out of range");
  if (!(x[played] >= kIweFloor)) {
    throw std::domain_error("iwe: strategy mass at the played action collapsed below 1e-12");
  }
  GradientEstimate g(x.size(), 0.0);
  g[played] = realized_cost / x[played];
  return g;
}

GradientEstimate ame(std::size_t observed, const CostMatrix& u_hat) {
  if (observed >= u_hat.cols()) throw std::out_of_range("ame: unknown jammer action");
  auto col = u_hat.column(observed);
  return {col.begin(), col.end()};
}

void OpponentModel::update(const HistoryKey& h, std::size_t next_jam) {
  if (next_jam >= n_actions_) throw std::out_of_range("OpponentModel: jammer action out of range");
  Entry& e = table_[h];
  auto it = std::lower_bound(e.counts.begin(), e.counts.end(), next_jam,
                             [](const auto& c, std::size_t b) { return c.first < b; });
  if (it != e.counts.end() && it->first == next_jam) {
    ++it->second;
  } else {
    e.counts.insert(it, {next_jam, 1});
  }
  ++e.total;
}

std::uint64_t OpponentModel::total(const HistoryKey& h) const {
  auto it = table_.find(h);
  return it == table_.end() ? 0 : it->second.total;
}

std::uint64_t OpponentModel::count(const HistoryKey& h, std::size_t b) const {
  auto it = table_.find(h);
  if (it == table_.end()) return 0;
  for (const auto& [a, c] : it->second.counts) {
    if (a == b) return c;
  }
  return 0;
}

SparseDist OpponentModel::sparse_query(const HistoryKey& h) const {
  SparseDist out;
  auto it = table_.find(h);
  if (it == table_.end() || it->second.total == 0) return out;
  const double total = static_cast<double>(it->second.total);
  out.reserve(it->second.counts.size());
  for (const auto& [b, c] : it->second.counts) out.emplace_back(b, static_cast<double>(c) / total);
  return out;
}

std::vector<double> OpponentModel::query(const HistoryKey& h) const {
  SparseDist s = sparse_query(h);
  if (s.empty()) return std::vector<double>(n_actions_, 1.0 / static_cast<double>(n_actions_));
  return to_dense(s, n_actions_);
}

void ome_into(const SparseDist& pi_hat, const CostMatrix& u_hat, std::vector<double>& out) {
  if (pi_hat.empty()) {
    out = u_hat.row_means();
    return;
  }
  out.assign(u_hat.rows(), 0.0);
  for (const auto& [b, p] : pi_hat) {
    auto col = u_hat.column(b);
    for (std::size_t a = 0; a < out.size(); ++a) out[a] += p * col[a];
  }
}

GradientEstimate ome(const SparseDist& pi_hat, const CostMatrix& u_hat) {
  GradientEstimate g;
  ome_into(pi_hat, u_hat, g);
  return g;
}

GradientEstimate ome(const HistoryKey& h, const OpponentModel& model, const CostMatrix& u_hat) {
  if (model.num_jammer_actions() != u_hat.cols()) throw std::invalid_argument("ome: model/matrix mismatch");
  return ome(model.sparse_query(h), u_hat);
}

double truncation_half_width(double v) { return 0.5 + std::min(v, 1.0 - v); }

CostMatrix perturb_cost_matrix(const CostMatrix& u, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("perturb: sigma must be >= 0");
  if (sigma == 0.0) return u;
  std::vector<double> data = u.data();
  for (double& v : data) {
    double w = truncation_half_width(v);
    if (w <= 0.0) continue;
    double eps;
    do {
      eps = sigma * rng.normal();
    } while (std::abs(eps) > w);
    v += eps;
  }
  return CostMatrix(u.rows(), u.cols(), std::move(data));
}

ThetaEstimate perturb_theta(const ScenarioParams& theta, const CostMatrix& u, double sigma, Rng& rng) {
  return ThetaEstimate{theta, sigma, perturb_cost_matrix(u, sigma, rng)};
}

}  // namespace antijam
