#pragma once

// Frequency grid, radar/jammer action spaces, the per-subpulse SINR model and
// the normalized cost matrix U(theta) shared by every learner.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace antijam {

using FreqIndex = int;
using FreqTuple = std::vector<FreqIndex>;

/// Uniformly spaced sub-carrier offsets around a carrier.
class FrequencyGrid {
 public:
  FrequencyGrid(double carrier_hz, double first_offset_hz, double step_hz,
                std::size_t count);
  /// Validates spacing; offsets must be strictly increasing with a constant step.
  FrequencyGrid(double carrier_hz, std::vector<double> offsets_hz);

  double carrier() const { return carrier_; }
  double step() const { return step_; }
  std::size_t size() const { return offsets_.size(); }
  double offset(FreqIndex i) const { return offsets_.at(static_cast<std::size_t>(i)); }
  const std::vector<double>& offsets() const { return offsets_; }

 private:
  double carrier_;
  double step_;
  std::vector<double> offsets_;
};

enum class SpecialAction : std::uint8_t { Observe };

std::string to_string(SpecialAction s);
SpecialAction special_from_string(const std::string& name);

struct RadarAction {
  FreqTuple freqs;
  bool operator==(const RadarAction&) const = default;
};

class JammerAction {
 public:
  JammerAction(FreqTuple freqs) : v_(std::move(freqs)) {}
  JammerAction(SpecialAction s) : v_(s) {}

  bool is_special() const { return std::holds_alternative<SpecialAction>(v_); }
  const FreqTuple& freqs() const { return std::get<FreqTuple>(v_); }
  SpecialAction special() const { return std::get<SpecialAction>(v_); }
  /// Frequency jammed on subpulse m, or nullopt when nothing is transmitted.
  std::optional<FreqIndex> freq_at(std::size_t m) const;

  bool operator==(const JammerAction&) const = default;

 private:
  std::variant<FreqTuple, SpecialAction> v_;
};

/// Received powers theta = [P_R, P_J, P_0] (linear, W) plus the SINR cap c.
struct ScenarioParams {
  double p_radar = 0.0;
  double p_jam = 0.0;
  double p_noise = 0.0;
  double sinr_cap = 0.0;

  void validate() const;
  /// min{P_R / P_0, c}: the best per-round average SINR any action can reach.
  double ceiling() const;
};

/// Enumerates A_R = F^M and A_J = F^M u B with a lexicographic bijection.
/// Special actions are appended after all frequency tuples in the order given.
class ActionSpace {
 public:
  static constexpr std::size_t kMaxRadarActions = 100000;

  ActionSpace(std::size_t num_freqs, std::size_t subpulses,
              std::vector<SpecialAction> specials = {});

  std::size_t num_freqs() const { return num_freqs_; }
  std::size_t subpulses() const { return subpulses_; }
  std::size_t radar_count() const { return radar_count_; }
  std::size_t jammer_count() const { return radar_count_ + specials_.size(); }
  const std::vector<SpecialAction>& specials() const { return specials_; }

  std::size_t index_of(const FreqTuple& t) const;
  std::size_t radar_index(const RadarAction& a) const { return index_of(a.freqs); }
  std::size_t jammer_index(const JammerAction& b) const;
  std::optional<std::size_t> special_index(SpecialAction s) const;

  /// Writes the M digits of tuple `idx` into `out` (most significant first).
  void decode_into(std::size_t idx, std::span<FreqIndex> out) const;
  FreqTuple decode(std::size_t idx) const;
  RadarAction radar_action(std::size_t idx) const { return {decode(idx)}; }
  JammerAction jammer_action(std::size_t idx) const;

  bool operator==(const ActionSpace&) const = default;

 private:
  void check_tuple(const FreqTuple& t) const;

  std::size_t num_freqs_;
  std::size_t subpulses_;
  std::size_t radar_count_;
  std::vector<SpecialAction> specials_;
};

/// P_R / (P_0 + P_J * 1{f_r == f_j}).
double sinr(FreqIndex f_r, FreqIndex f_j, const ScenarioParams& theta);
double sinr(FreqIndex f_r, std::optional<FreqIndex> f_j, const ScenarioParams& theta);

/// (1/M) sum_m min{SINR_m, c}; an OBSERVE jammer action jams nothing.
double avg_sinr(const RadarAction& a, const JammerAction& b, const ScenarioParams& theta);
double avg_sinr(std::span<const FreqIndex> a, std::span<const FreqIndex> b,
                bool b_silent, const ScenarioParams& theta);

/// (c - avg_sinr) / c, in [0, 1].
double cost_entry(const RadarAction& a, const JammerAction& b, const ScenarioParams& theta);

/// Dense |A_R| x |A_J| table stored column-major so a jammer column is contiguous.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major);
  /// Builds from a row-major nested list, e.g. {{0,1},{1,0}}.
  static CostMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t a, std::size_t b) const { return data_[b * rows_ + a]; }
  double& at(std::size_t a, std::size_t b) { return data_[b * rows_ + a]; }
  std::span<const double> column(std::size_t b) const {
    return {data_.data() + b * rows_, rows_};
  }
  /// U * uniform(A_J): the gradient an uninformed opponent model produces.
  const std::vector<double>& row_means() const { return row_means_; }
  const std::vector<double>& data() const { return data_; }

  /// out = U * y for a dense y; out is resized.
  void multiply(std::span<const double> y, std::vector<double>& out) const;

 private:
  void refresh_row_means();

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
  std::vector<double> row_means_;
};

CostMatrix build_cost_matrix(const ActionSpace& space, const ScenarioParams& theta);
CostMatrix build_cost_matrix(const FrequencyGrid& grid, std::size_t subpulses,
                             const std::vector<SpecialAction>& specials,
                             const ScenarioParams& theta);

/// x^T U y.
double expected_cost(std::span<const double> x, std::span<const double> y, const CostMatrix& u);

/// Free-space link budget for deriving theta from transmitter-side quantities.
/// Not used by the default scenarios, which configure received powers directly.
struct LinkBudget {
  double radar_tx_power_w = 10e3;
  double radar_gain_db = 30.0;
  double jammer_tx_power_w = 1e3;
  double jammer_gain_db = 0.0;
  double carrier_hz = 10e9;
  double range_m = 100e3;
  double target_rcs_m2 = 1.0;
  double noise_bandwidth_hz = 8e6;
  double noise_figure_db = 3.0;
  double system_temp_k = 290.0;
};

/// Monostatic radar equation for P_R, one-way path loss for P_J, kTBF for P_0.
ScenarioParams link_budget_powers(const LinkBudget& lb, double sinr_cap);

}  // namespace antijam
