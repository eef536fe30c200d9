#pragma once

// Experiment harness: runs the radar/jammer interaction for N rounds over T
// seeded trials and aggregates regret and SINR curves.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "antijam/estimators.hpp"
#include "antijam/game.hpp"
#include "antijam/history.hpp"
#include "antijam/jammers.hpp"
#include "antijam/signal.hpp"

namespace antijam {

enum class Algorithm { OmdIwe, OmdAme, OmdOme };
enum class Mode { Abstract, Signal };
enum class ComparatorMode { PerTrial, Pooled };
/// When the opponent model absorbs b_n relative to computing the OME gradient.
enum class ModelUpdate { AfterEstimate, BeforeEstimate };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);
std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

/// Jammer rule as described in a config file.
struct JammerSpec {
  std::string type = "stationary";  // stationary | smsp | snj | table
  std::size_t k = 2;                 // history length for smsp/snj
  double w1 = 0.7;
  double w2 = 0.3;
  bool count_jammer_actions = false;
  /// For "stationary": explicit distribution; empty = the reference rule.
  std::vector<std::pair<std::string, double>> dist;
  /// For "table": path to a table-rule file.
  std::string table_path;
  /// For "table": rule given in memory (takes precedence over table_path).
  std::optional<TableRule> table;
};

struct ExperimentConfig {
  double carrier_hz = 10e9;
  std::vector<double> offsets_hz{6e6, 14e6, 22e6};
  std::size_t subpulses = 4;
  std::vector<SpecialAction> specials{SpecialAction::Observe};
  ScenarioParams theta;
  double sigma = 0.0;
  /// Redraw U_hat every round instead of once per trial.
  bool redraw_u_hat = false;

  std::size_t rounds = 10000;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;

  Algorithm algorithm = Algorithm::OmdAme;
  /// OME history length.
  std::optional<std::size_t> k;
  std::optional<double> eta;
  std::optional<double> effective_history_size;
  ModelUpdate model_update = ModelUpdate::BeforeEstimate;
  /// Node budget for counting reachable histories.
  std::size_t history_budget = 2'000'000;

  JammerSpec jammer;
  /// Initial history: every slot filled with this (radar, jammer) tuple pair.
  FreqTuple initial_radar{0, 0, 0, 0};
  FreqTuple initial_jammer{0, 0, 0, 0};

  Mode mode = Mode::Abstract;
  WaveformConfig waveform;

  ComparatorMode comparator = ComparatorMode::PerTrial;
  /// Sample-efficiency threshold; default ceiling - 0.35 dB.
  std::optional<double> sinr_threshold_db;
  /// Use an explicit cost matrix instead of the one built from theta.
  std::optional<CostMatrix> cost_matrix;

  std::size_t threads = 0;  // 0 = hardware concurrency
  bool trace = false;
  std::string output_dir;

  void validate() const;
};

/// Everything trials share read-only.
struct Scenario {
  ActionSpace space;
  FrequencyGrid grid;
  CostMatrix u;
  JammerRule rule;
  RoundPair initial;
  double eta = 0.0;
  double history_size = 1.0;
  /// True when history_size came from enumerating reachable histories.
  bool history_size_enumerated = false;
};

Scenario make_scenario(const ExperimentConfig& cfg);
JammerRule make_jammer(const JammerSpec& spec, const ActionSpace& space);

struct RoundRecord {
  std::size_t round = 0;  // 1-based
  std::uint32_t radar = 0;
  std::uint32_t jammer = 0;
  std::uint32_t jammer_observed = 0;
  double realized_cost = 0.0;
  double expected_cost = 0.0;
  double sinr_db = 0.0;
  /// min_a (U y_n)(a).
  double best_response_cost = 0.0;
  /// min_a sum_{j<=n} (U y_j)(a).
  double static_comparator_cost = 0.0;
  /// The learner's full strategy for this round; filled only when requested.
  std::vector<double> strategy;
};

struct TrialOptions {
  bool keep_records = false;
  bool keep_strategies = false;
  bool keep_model = false;
  /// Keep the per-round cumulative cost vectors (needed for pooled comparators).
  bool keep_cumulative = false;
  /// When set, evaluate static regret against these per-round pure comparators.
  const std::vector<std::uint32_t>* fixed_comparators = nullptr;
};

struct TrialResult {
  std::size_t trial = 0;
  /// Per-round curves, length N.
  std::vector<double> static_regret;     // (sum phi - static comparator) / n
  std::vector<double> universal_regret;  // (sum phi - sum best response) / n
  std::vector<double> sinr_db;
  std::vector<double> cum_expected;      // sum_{j<=n} phi_j
  std::vector<RoundRecord> records;
  std::optional<OpponentModel> model;
  /// Row-major N x |A_R| cumulative costs sum_{j<=n} U y_j, when kept.
  std::vector<double> cumulative;
};

TrialResult run_trial(const Scenario& sc, const ExperimentConfig& cfg, std::size_t trial,
                      const TrialOptions& opt = {});

/// Per-round mean and 95% half-width 1.96 s / sqrt(T).
struct Curve {
  std::vector<double> mean;
  std::vector<double> ci;
};

/// Aggregates equal-length per-trial series in trial order.
Curve aggregate(const std::vector<const std::vector<double>*>& series);

/// Static regret curve from records: comparator = best fixed pure action in
/// hindsight over each prefix, per trial, then averaged.
Curve static_regret_curve(const std::vector<std::vector<RoundRecord>>& trials);
Curve universal_regret_curve(const std::vector<std::vector<RoundRecord>>& trials);
Curve sinr_curve(const std::vector<std::vector<RoundRecord>>& trials);

/// Smallest 1-based n0 with curve[n] >= threshold for all n >= n0.
std::optional<std::size_t> sample_efficiency(const std::vector<double>& sinr_db, double threshold_db);

struct ExperimentResult {
  Curve static_regret;
  Curve universal_regret;
  Curve sinr_db;
  double eta = 0.0;
  double history_size = 1.0;
  double ceiling_db = 0.0;
  double threshold_db = 0.0;
  std::optional<std::size_t> sample_efficiency;
  std::size_t rounds() const { return static_regret.mean.size(); }
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs all trials and aggregates in trial-index order, so results do not
/// depend on the worker count. Writes outputs when cfg.output_dir is set.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const ProgressFn& progress = {});

void write_curves_csv(const std::string& path, const ExperimentResult& r);
void write_summary_json(const std::string& path, const ExperimentConfig& cfg, const ExperimentResult& r);
void write_trace_csv(const std::string& path, const std::vector<RoundRecord>& records,
                     const ActionSpace& space);

}  // namespace antijam
