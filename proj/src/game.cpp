#include "antijam/game.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace antijam {

FrequencyGrid::FrequencyGrid(double carrier_hz, double first_offset_hz, double step_hz,
                             std::size_t count)
    : carrier_(carrier_hz), step_(step_hz) {
  if (count < 2) throw std::invalid_argument("FrequencyGrid: need at least 2 frequencies");
  if (!(step_hz > 0.0)) throw std::invalid_argument("FrequencyGrid: step must be positive");
  offsets_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    offsets_.push_back(first_offset_hz + step_hz * static_cast<double>(i));
  }
}

FrequencyGrid::FrequencyGrid(double carrier_hz, std::vector<double> offsets_hz)
    : carrier_(carrier_hz), step_(0.0), offsets_(std::move(offsets_hz)) {
  if (offsets_.size() < 2) throw std::invalid_argument("FrequencyGrid: need at least 2 frequencies");
  step_ = offsets_[1] - offsets_[0];
  if (!(step_ > 0.0)) throw std::invalid_argument("FrequencyGrid: offsets must increase");
  for (std::size_t i = 1; i < offsets_.size(); ++i) {
    double d = offsets_[i] - offsets_[i - 1];
    if (std::abs(d - step_) > 1e-9 * std::max(1.0, std::abs(step_))) {
      throw std::invalid_argument("FrequencyGrid: offsets must be uniformly spaced");
    }
  }
}

std::string to_string(SpecialAction s) {
  switch (s) {
    case SpecialAction::Observe:
      return "OBSERVE";
  }
  return "?";
}

SpecialAction special_from_string(const std::string& name) {
  if (name == "OBSERVE") return SpecialAction::Observe;
  throw std::invalid_argument("unknown special jammer action: " + name);
}

std::optional<FreqIndex> JammerAction::freq_at(std::size_t m) const {
  if (is_special()) return std::nullopt;
  return freqs().at(m);
}

void ScenarioParams::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(p_radar) || !ok(p_jam) || !ok(p_noise)) {
    throw std::invalid_argument("ScenarioParams: powers must be finite and > 0");
  }
  if (!ok(sinr_cap)) throw std::invalid_argument("ScenarioParams: sinr_cap must be finite and > 0");
}

double ScenarioParams::ceiling() const { return std::min(p_radar / p_noise, sinr_cap); }

ActionSpace::ActionSpace(std::size_t num_freqs, std::size_t subpulses,
                         std::vector<SpecialAction> specials)
    : num_freqs_(num_freqs), subpulses_(subpulses), radar_count_(1), specials_(std::move(specials)) {
  if (num_freqs == 0 || subpulses == 0) {
    throw std::invalid_argument("ActionSpace: need at least one frequency and one subpulse");
  }
  for (std::size_t m = 0; m < subpulses; ++m) {
    radar_count_ *= num_freqs;
    if (radar_count_ > kMaxRadarActions) {
      throw std::invalid_argument("ActionSpace: L^M exceeds the 1e5 radar-action cap");
    }
  }
  for (std::size_t i = 0; i < specials_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (specials_[i] == specials_[j]) throw std::invalid_argument("ActionSpace: duplicate special");
    }
  }
}

void ActionSpace::check_tuple(const FreqTuple& t) const {
  if (t.size() != subpulses_) throw std::invalid_argument("action tuple has wrong length");
  for (FreqIndex f : t) {
    if (f < 0 || static_cast<std::size_t>(f) >= num_freqs_) {
      throw std::invalid_argument("action tuple frequency index out of range");
    }
  }
}

std::size_t ActionSpace::index_of(const FreqTuple& t) const {
  check_tuple(t);
  std::size_t idx = 0;
  for (FreqIndex f : t) idx = idx * num_freqs_ + static_cast<std::size_t>(f);
  return idx;
}

std::optional<std::size_t> ActionSpace::special_index(SpecialAction s) const {
  auto it = std::find(specials_.begin(), specials_.end(), s);
  if (it == specials_.end()) return std::nullopt;
  return radar_count_ + static_cast<std::size_t>(it - specials_.begin());
}

std::size_t ActionSpace::jammer_index(const JammerAction& b) const {
  if (!b.is_special()) return index_of(b.freqs());
  auto idx = special_index(b.special());
  if (!idx) throw std::invalid_argument("special jammer action not in this action space");
  return *idx;
}

void ActionSpace::decode_into(std::size_t idx, std::span<FreqIndex> out) const {
  if (idx >= radar_count_) throw std::out_of_range("tuple index out of range");
  for (std::size_t m = subpulses_; m-- > 0;) {
    out[m] = static_cast<FreqIndex>(idx % num_freqs_);
    idx /= num_freqs_;
  }
}

FreqTuple ActionSpace::decode(std::size_t idx) const {
  FreqTuple t(subpulses_);
  decode_into(idx, t);
  return t;
}

JammerAction ActionSpace::jammer_action(std::size_t idx) const {
  if (idx < radar_count_) return JammerAction(decode(idx));
  if (idx >= jammer_count()) throw std::out_of_range("jammer action index out of range");
  return JammerAction(specials_[idx - radar_count_]);
}

double sinr(FreqIndex f_r, FreqIndex f_j, const ScenarioParams& theta) {
  double jam = (f_r == f_j) ? theta.p_jam : 0.0;
  return theta.p_radar / (theta.p_noise + jam);
}

double sinr(FreqIndex f_r, std::optional<FreqIndex> f_j, const ScenarioParams& theta) {
  if (!f_j) return theta.p_radar / theta.p_noise;
  return sinr(f_r, *f_j, theta);
}

double avg_sinr(std::span<const FreqIndex> a, std::span<const FreqIndex> b, bool b_silent,
                const ScenarioParams& theta) {
  if (!b_silent && a.size() != b.size()) throw std::invalid_argument("avg_sinr: length mismatch");
  if (a.empty()) throw std::invalid_argument("avg_sinr: empty action");
  double sum = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    double s = b_silent ? theta.p_radar / theta.p_noise : sinr(a[m], b[m], theta);
    sum += std::min(s, theta.sinr_cap);
  }
  return sum / static_cast<double>(a.size());
}

double avg_sinr(const RadarAction& a, const JammerAction& b, const ScenarioParams& theta) {
  if (b.is_special()) return avg_sinr(a.freqs, {}, true, theta);
  return avg_sinr(a.freqs, b.freqs(), false, theta);
}

double cost_entry(const RadarAction& a, const JammerAction& b, const ScenarioParams& theta) {
  return (theta.sinr_cap - avg_sinr(a, b, theta)) / theta.sinr_cap;
}

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major)
    : rows_(rows), cols_(cols), data_(std::move(column_major)) {
  if (data_.size() != rows * cols) throw std::invalid_argument("CostMatrix: size mismatch");
  refresh_row_means();
}

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("CostMatrix: empty");
  std::size_t r = rows.size();
  std::size_t c = rows.front().size();
  std::vector<double> data(r * c);
  for (std::size_t a = 0; a < r; ++a) {
    if (rows[a].size() != c) throw std::invalid_argument("CostMatrix: ragged rows");
    for (std::size_t b = 0; b < c; ++b) data[b * r + a] = rows[a][b];
  }
  return CostMatrix(r, c, std::move(data));
}

void CostMatrix::refresh_row_means() {
  row_means_.assign(rows_, 0.0);
  for (std::size_t b = 0; b < cols_; ++b) {
    const double* col = data_.data() + b * rows_;
    for (std::size_t a = 0; a < rows_; ++a) row_means_[a] += col[a];
  }
  for (double& v : row_means_) v /= static_cast<double>(cols_);
}

void CostMatrix::multiply(std::span<const double> y, std::vector<double>& out) const {
  if (y.size() != cols_) throw std::invalid_argument("CostMatrix::multiply: dimension mismatch");
  out.assign(rows_, 0.0);
  for (std::size_t b = 0; b < cols_; ++b) {
    if (y[b] == 0.0) continue;
    const double* col = data_.data() + b * rows_;
    for (std::size_t a = 0; a < rows_; ++a) out[a] += y[b] * col[a];
  }
}

CostMatrix build_cost_matrix(const ActionSpace& space, const ScenarioParams& theta) {
  theta.validate();
  const std::size_t rows = space.radar_count();
  const std::size_t cols = space.jammer_count();
  std::vector<double> data(rows * cols);
  FreqTuple a(space.subpulses());
  FreqTuple b(space.subpulses());
  for (std::size_t j = 0; j < cols; ++j) {
    bool silent = j >= rows;
    if (!silent) space.decode_into(j, b);
    for (std::size_t i = 0; i < rows; ++i) {
      space.decode_into(i, a);
      double s = avg_sinr(a, b, silent, theta);
      data[j * rows + i] = (theta.sinr_cap - s) / theta.sinr_cap;
    }
  }
  return CostMatrix(rows, cols, std::move(data));
}

CostMatrix build_cost_matrix(const FrequencyGrid& grid, std::size_t subpulses,
                             const std::vector<SpecialAction>& specials,
                             const ScenarioParams& theta) {
  return build_cost_matrix(ActionSpace(grid.size(), subpulses, specials), theta);
}

double expected_cost(std::span<const double> x, std::span<const double> y, const CostMatrix& u) {
  if (x.size() != u.rows() || y.size() != u.cols()) {
    throw std::invalid_argument("expected_cost: dimension mismatch");
  }
  double total = 0.0;
  for (std::size_t b = 0; b < u.cols(); ++b) {
    if (y[b] == 0.0) continue;
    auto col = u.column(b);
    double inner = 0.0;
    for (std::size_t a = 0; a < u.rows(); ++a) inner += x[a] * col[a];
    total += y[b] * inner;
  }
  return total;
}

ScenarioParams link_budget_powers(const LinkBudget& lb, double sinr_cap) {
  constexpr double kLight = 299792458.0;
  constexpr double kBoltzmann = 1.380649e-23;
  const double pi = std::numbers::pi;
  const double lambda = kLight / lb.carrier_hz;
  const double g_r = std::pow(10.0, lb.radar_gain_db / 10.0);
  const double g_j = std::pow(10.0, lb.jammer_gain_db / 10.0);
  ScenarioParams p;
  p.p_radar = lb.radar_tx_power_w * g_r * g_r * lambda * lambda * lb.target_rcs_m2 /
              (std::pow(4.0 * pi, 3) * std::pow(lb.range_m, 4));
  p.p_jam = lb.jammer_tx_power_w * g_j * g_r * lambda * lambda /
            (std::pow(4.0 * pi, 2) * lb.range_m * lb.range_m);
  p.p_noise = kBoltzmann * lb.system_temp_k * lb.noise_bandwidth_hz *
              std::pow(10.0, lb.noise_figure_db / 10.0);
  p.sinr_cap = sinr_cap;
  p.validate();
  return p;
}

}  // namespace antijam
