#pragma once

// Rule-based jammers: y_n = pi(h_n) for a fixed mapping pi from the recent
// interaction history to a distribution over A_J.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "antijam/game.hpp"
#include "antijam/history.hpp"
#include "antijam/rng.hpp"

namespace antijam {

/// Fixed distribution, independent of history.
struct StationaryRule {
  SparseDist dist;
};

/// Subpulse m of the jammer action copies radar position `position` from the
/// pulse `lag` rounds back (lag 1 = most recent).
struct PositionPick {
  std::size_t lag = 1;
  std::size_t position = 0;
};

/// Point-mass rule assembling its tuple from fixed positions of recent pulses.
struct DeterministicHistoryRule {
  std::size_t k = 2;
  std::vector<PositionPick> picks;
};

/// Jams the two most frequent frequencies of the window with weights (w1, w2)
/// using constant tuples. Ties go to the lower frequency index; with a single
/// distinct frequency the rule collapses to a point mass.
struct StochasticHistoryRule {
  std::size_t k = 2;
  double w1 = 0.7;
  double w2 = 0.3;
  bool count_jammer_actions = false;
};

/// Explicit history -> distribution table. Unlisted histories use `fallback`,
/// or the uniform distribution when no fallback is given.
struct TableRule {
  std::size_t k = 1;
  std::unordered_map<HistoryKey, SparseDist, HistoryKeyHash> table;
  std::optional<SparseDist> fallback;
};

class JammerRule {
 public:
  using Variant = std::variant<StationaryRule, DeterministicHistoryRule, StochasticHistoryRule, TableRule>;

  JammerRule(ActionSpace space, Variant rule);

  const ActionSpace& space() const { return space_; }
  const Variant& rule() const { return rule_; }
  /// 0 for stationary rules.
  std::size_t history_length() const;
  bool is_history_based() const { return history_length() > 0; }
  std::string name() const;

  /// y = pi(h); h must have exactly history_length() entries.
  SparseDist strategy(const HistoryKey& h) const;

 private:
  SparseDist smsp_strategy(const DeterministicHistoryRule& r, const HistoryKey& h) const;
  SparseDist snj_strategy(const StochasticHistoryRule& r, const HistoryKey& h) const;

  ActionSpace space_;
  Variant rule_;
};

inline SparseDist jammer_strategy(const JammerRule& rule, const HistoryKey& h) { return rule.strategy(h); }

/// Inverse-CDF draw from a sparse distribution.
std::size_t sample_sparse(const SparseDist& d, Rng& rng);
inline std::size_t sample_jam(const JammerRule& rule, const HistoryKey& h, Rng& rng) {
  return sample_sparse(rule.strategy(h), rng);
}

/// 0.2 on [f1,f1,f2,f2], 0.4 on [f1,f1,f1,f1], 0.4 on [f2,f2,f2,f2].
JammerRule make_stationary_reference(const ActionSpace& space);
/// b = [older pos1, older pos3, recent pos1, recent pos3] over the last two pulses.
JammerRule make_smsp(const ActionSpace& space);
JammerRule make_snj(const ActionSpace& space, double w1 = 0.7, double w2 = 0.3,
                    bool count_jammer_actions = false);

/// Number of distinct length-k histories reachable from `initial` when the
/// radar may play anything and the jammer follows `rule`. Returns nullopt if
/// more than `budget` search nodes would be needed.
std::optional<std::size_t> reachable_histories(const JammerRule& rule, std::size_t k,
                                               std::size_t budget, RoundPair initial = {});

// Text format for table rules, one history per line:
//   k <n>
//   <pair> ... <pair> => <action>=<p> <action>=<p> ...
//   default => uniform | <action>=<p> ...
// A pair is "r:<f>,<f>,...|j:<f>,<f>,..." or "r:...|j:OBSERVE", oldest first.
// An action is "<f>,<f>,..." or a special name such as OBSERVE. '#' starts a comment.
/// Jammer action index from "<f>,<f>,..." or a special name.
std::size_t parse_action_label(const std::string& text, const ActionSpace& space);
std::string action_label(std::size_t b, const ActionSpace& space);

TableRule parse_table_rule(std::istream& in, const ActionSpace& space);
TableRule load_table_rule(const std::string& path, const ActionSpace& space);
void write_table_rule(std::ostream& out, const TableRule& rule, const ActionSpace& space);

}  // namespace antijam
