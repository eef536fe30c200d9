#include "antijam/jammers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace antijam {

namespace {

constexpr double kDistTolerance = 1e-12;

SparseDist normalize_sparse(SparseDist d) {
  std::sort(d.begin(), d.end());
  SparseDist merged;
  for (const auto& [b, p] : d) {
    if (p < 0.0 || !std::isfinite(p)) throw std::invalid_argument("jammer distribution has a negative entry");
    if (!merged.empty() && merged.back().first == b) {
      merged.back().second += p;
    } else {
      merged.emplace_back(b, p);
    }
  }
  double sum = 0.0;
  for (const auto& e : merged) sum += e.second;
  if (std::abs(sum - 1.0) > kDistTolerance) throw std::invalid_argument("jammer distribution must sum to 1");
  std::erase_if(merged, [](const auto& e) { return e.second == 0.0; });
  return merged;
}

void check_support(const SparseDist& d, const ActionSpace& space) {
  for (const auto& e : d) {
    if (e.first >= space.jammer_count()) throw std::invalid_argument("jammer distribution index out of range");
  }
}

SparseDist uniform_dist(std::size_t n) {
  SparseDist d;
  d.reserve(n);
  for (std::size_t b = 0; b < n; ++b) d.emplace_back(b, 1.0 / static_cast<double>(n));
  return d;
}

}  // namespace

JammerRule::JammerRule(ActionSpace space, Variant rule) : space_(std::move(space)), rule_(std::move(rule)) {
  std::visit(
      [this](auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, StationaryRule>) {
          r.dist = normalize_sparse(r.dist);
          check_support(r.dist, space_);
        } else if constexpr (std::is_same_v<T, DeterministicHistoryRule>) {
          if (r.k < 1) throw std::invalid_argument("deterministic rule: k must be >= 1");
          if (r.picks.size() != space_.subpulses()) {
            throw std::invalid_argument("deterministic rule: need one pick per subpulse");
          }
          for (const auto& p : r.picks) {
            if (p.lag < 1 || p.lag > r.k || p.position >= space_.subpulses()) {
              throw std::invalid_argument("deterministic rule: pick out of range");
            }
          }
        } else if constexpr (std::is_same_v<T, StochasticHistoryRule>) {
          if (r.k < 1) throw std::invalid_argument("stochastic rule: k must be >= 1");
          if (r.w1 < 0.0 || r.w2 < 0.0 || std::abs(r.w1 + r.w2 - 1.0) > kDistTolerance) {
            throw std::invalid_argument("stochastic rule: weights must be non-negative and sum to 1");
          }
        } else {
          if (r.k < 1) throw std::invalid_argument("table rule: k must be >= 1");
          for (auto& [h, d] : r.table) {
            if (h.length() != r.k) throw std::invalid_argument("table rule: history has wrong length");
            d = normalize_sparse(d);
            check_support(d, space_);
          }
          if (r.fallback) {
            r.fallback = normalize_sparse(*r.fallback);
            check_support(*r.fallback, space_);
          }
        }
      },
      rule_);
}

std::size_t JammerRule::history_length() const {
  return std::visit(
      [](const auto& r) -> std::size_t {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, StationaryRule>) {
          return 0;
        } else {
          return r.k;
        }
      },
      rule_);
}

std::string JammerRule::name() const {
  switch (rule_.index()) {
    case 0:
      return "stationary";
    case 1:
      return "smsp";
    case 2:
      return "snj";
    default:
      return "table";
  }
}

SparseDist JammerRule::strategy(const HistoryKey& h) const {
  const std::size_t k = history_length();
  if (k > 0 && h.length() != k) throw std::invalid_argument("jammer_strategy: history length mismatch");
  return std::visit(
      [&](const auto& r) -> SparseDist {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, StationaryRule>) {
          return r.dist;
        } else if constexpr (std::is_same_v<T, DeterministicHistoryRule>) {
          return smsp_strategy(r, h);
        } else if constexpr (std::is_same_v<T, StochasticHistoryRule>) {
          return snj_strategy(r, h);
        } else {
          auto it = r.table.find(h);
          if (it != r.table.end()) return it->second;
          return r.fallback ? *r.fallback : uniform_dist(space_.jammer_count());
        }
      },
      rule_);
}

SparseDist JammerRule::smsp_strategy(const DeterministicHistoryRule& r, const HistoryKey& h) const {
  const std::size_t m_count = space_.subpulses();
  FreqTuple pulse(m_count);
  FreqTuple chosen(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    space_.decode_into(h.at_lag(r.picks[m].lag).radar, pulse);
    chosen[m] = pulse[r.picks[m].position];
  }
  return {{space_.index_of(chosen), 1.0}};
}

SparseDist JammerRule::snj_strategy(const StochasticHistoryRule& r, const HistoryKey& h) const {
  const std::size_t m_count = space_.subpulses();
  std::vector<std::size_t> counts(space_.num_freqs(), 0);
  FreqTuple pulse(m_count);
  for (const auto& p : h.window) {
    space_.decode_into(p.radar, pulse);
    for (FreqIndex f : pulse) ++counts[static_cast<std::size_t>(f)];
    if (r.count_jammer_actions && p.jammer < space_.radar_count()) {
      space_.decode_into(p.jammer, pulse);
      for (FreqIndex f : pulse) ++counts[static_cast<std::size_t>(f)];
    }
  }
  // Stable ordering: higher count first, lower index on ties.
  std::vector<std::size_t> order(counts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });
  auto constant_tuple = [&](std::size_t f) {
    return space_.index_of(FreqTuple(m_count, static_cast<FreqIndex>(f)));
  };
  const std::size_t f1 = order[0];
  const bool has_second = order.size() > 1 && counts[order[1]] > 0;
  if (!has_second || r.w2 == 0.0) return {{constant_tuple(f1), 1.0}};
  if (r.w1 == 0.0) return {{constant_tuple(order[1]), 1.0}};
  SparseDist d{{constant_tuple(f1), r.w1}, {constant_tuple(order[1]), r.w2}};
  std::sort(d.begin(), d.end());
  return d;
}

std::size_t sample_sparse(const SparseDist& d, Rng& rng) {
  if (d.empty()) throw std::invalid_argument("sample_sparse: empty distribution");
  if (d.size() == 1) return d.front().first;
  double u = rng.uniform();
  double acc = 0.0;
  for (const auto& [b, p] : d) {
    acc += p;
    if (u < acc) return b;
  }
  return d.back().first;
}

JammerRule make_stationary_reference(const ActionSpace& space) {
  if (space.subpulses() != 4 || space.num_freqs() < 2) {
    throw std::invalid_argument("reference stationary jammer needs M = 4 and L >= 2");
  }
  StationaryRule r;
  r.dist = {{space.index_of({0, 0, 1, 1}), 0.2},
            {space.index_of({0, 0, 0, 0}), 0.4},
            {space.index_of({1, 1, 1, 1}), 0.4}};
  return JammerRule(space, r);
}

JammerRule make_smsp(const ActionSpace& space) {
  if (space.subpulses() != 4) throw std::invalid_argument("SMSP jammer needs M = 4");
  DeterministicHistoryRule r;
  r.k = 2;
  r.picks = {{2, 0}, {2, 2}, {1, 0}, {1, 2}};
  return JammerRule(space, r);
}

JammerRule make_snj(const ActionSpace& space, double w1, double w2, bool count_jammer_actions) {
  StochasticHistoryRule r;
  r.k = 2;
  r.w1 = w1;
  r.w2 = w2;
  r.count_jammer_actions = count_jammer_actions;
  return JammerRule(space, r);
}

std::optional<std::size_t> reachable_histories(const JammerRule& rule, std::size_t k,
                                               std::size_t budget, RoundPair initial) {
  if (budget < 1) throw std::invalid_argument("reachable_histories: budget must be >= 1");
  const ActionSpace& space = rule.space();
  const std::size_t width = std::max(k, rule.history_length());
  if (k == 0) return 1;

  // States are windows of `width` pairs packed base (|A_R| |A_J|) into 64 bits.
  const std::uint64_t base = static_cast<std::uint64_t>(space.radar_count()) * space.jammer_count();
  long double span = 1.0L;
  for (std::size_t i = 0; i < width; ++i) span *= static_cast<long double>(base);
  if (span > static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) return std::nullopt;
  std::uint64_t top = 1;
  for (std::size_t i = 0; i + 1 < width; ++i) top *= base;
  std::uint64_t suffix_mod = 1;
  for (std::size_t i = 0; i < k; ++i) suffix_mod *= base;

  auto pack_pair = [&](RoundPair p) {
    return static_cast<std::uint64_t>(p.radar) * space.jammer_count() + p.jammer;
  };
  auto unpack = [&](std::uint64_t code) {
    HistoryKey h;
    h.window.resize(width);
    for (std::size_t i = width; i-- > 0;) {
      std::uint64_t pc = code % base;
      code /= base;
      h.window[i] = {static_cast<std::uint32_t>(pc / space.jammer_count()),
                     static_cast<std::uint32_t>(pc % space.jammer_count())};
    }
    return h;
  };

  std::uint64_t start = 0;
  for (std::size_t i = 0; i < width; ++i) start = start * base + pack_pair(initial);

  std::unordered_set<std::uint64_t> seen{start};
  std::unordered_set<std::uint64_t> suffixes{start % suffix_mod};
  std::vector<std::uint64_t> frontier{start};
  const std::size_t rule_k = rule.history_length();
  while (!frontier.empty()) {
    std::uint64_t code = frontier.back();
    frontier.pop_back();
    HistoryKey h = unpack(code);
    SparseDist y = rule.strategy(rule_k > 0 ? h.suffix(rule_k) : HistoryKey{});
    std::uint64_t shifted = (code % top) * base;
    for (std::size_t a = 0; a < space.radar_count(); ++a) {
      for (const auto& [b, p] : y) {
        std::uint64_t next = shifted + pack_pair({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)});
        if (seen.insert(next).second) {
          if (seen.size() > budget) return std::nullopt;
          suffixes.insert(next % suffix_mod);
          frontier.push_back(next);
        }
      }
    }
  }
  return suffixes.size();
}

// ---------------------------------------------------------------------------
// Table rule text format

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

FreqTuple parse_tuple(const std::string& text, const ActionSpace& space) {
  FreqTuple t;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) t.push_back(std::stoi(item));
  space.index_of(t);  // validates
  return t;
}

SparseDist parse_dist(const std::string& text, const ActionSpace& space, std::size_t line) {
  std::stringstream ss(text);
  std::string tok;
  SparseDist d;
  while (ss >> tok) {
    if (tok == "uniform") return uniform_dist(space.jammer_count());
    auto eq = tok.rfind('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("table rule line " + std::to_string(line) + ": expected <action>=<p>");
    }
    d.emplace_back(parse_action_label(tok.substr(0, eq), space), std::stod(tok.substr(eq + 1)));
  }
  return d;
}

}  // namespace

std::size_t parse_action_label(const std::string& text, const ActionSpace& space) {
  if (!text.empty() && std::isalpha(static_cast<unsigned char>(text[0]))) {
    return space.jammer_index(JammerAction(special_from_string(text)));
  }
  return space.index_of(parse_tuple(text, space));
}

std::string action_label(std::size_t b, const ActionSpace& space) {
  JammerAction act = space.jammer_action(b);
  if (act.is_special()) return to_string(act.special());
  std::string out;
  for (std::size_t m = 0; m < act.freqs().size(); ++m) {
    if (m) out += ',';
    out += std::to_string(act.freqs()[m]);
  }
  return out;
}

TableRule parse_table_rule(std::istream& in, const ActionSpace& space) {
  TableRule rule;
  bool have_k = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto diag = [&](const std::string& msg) {
      return std::invalid_argument("table rule line " + std::to_string(line_no) + ": " + msg);
    };
    try {
      if (line.rfind("k ", 0) == 0) {
        rule.k = std::stoul(line.substr(2));
        have_k = true;
        continue;
      }
      auto arrow = line.find("=>");
      if (arrow == std::string::npos) throw diag("missing '=>'");
      std::string lhs = trim(line.substr(0, arrow));
      SparseDist dist = parse_dist(line.substr(arrow + 2), space, line_no);
      if (lhs == "default") {
        rule.fallback = dist;
        continue;
      }
      if (!have_k) throw diag("'k <n>' must precede history lines");
      HistoryKey h;
      std::stringstream ss(lhs);
      std::string pair;
      while (ss >> pair) {
        auto bar = pair.find('|');
        if (pair.rfind("r:", 0) != 0 || bar == std::string::npos || pair.compare(bar + 1, 2, "j:") != 0) {
          throw diag("expected r:<tuple>|j:<action>");
        }
        auto r = space.index_of(parse_tuple(pair.substr(2, bar - 2), space));
        auto j = parse_action_label(pair.substr(bar + 3), space);
        h.window.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(j)});
      }
      if (h.length() != rule.k) throw diag("history length differs from k");
      rule.table[h] = dist;
    } catch (const std::invalid_argument& e) {
      std::string what = e.what();
      if (what.rfind("table rule line", 0) == 0) throw;
      throw diag(what);
    }
  }
  if (!have_k) throw std::invalid_argument("table rule: missing 'k <n>' line");
  // Validate by constructing a rule once.
  JammerRule check(space, rule);
  return std::get<TableRule>(check.rule());
}

TableRule load_table_rule(const std::string& path, const ActionSpace& space) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table rule file: " + path);
  return parse_table_rule(in, space);
}

void write_table_rule(std::ostream& out, const TableRule& rule, const ActionSpace& space) {
  out << "k " << rule.k << "\n";
  // Sort for a stable file layout.
  std::vector<std::pair<std::string, std::string>> lines;
  for (const auto& [h, d] : rule.table) {
    std::string lhs;
    for (const auto& p : h.window) {
      if (!lhs.empty()) lhs += ' ';
      lhs += "r:" + action_label(p.radar, space) + "|j:" + action_label(p.jammer, space);
    }
    std::ostringstream rhs;
    rhs.precision(17);
    for (const auto& [b, p] : d) rhs << ' ' << action_label(b, space) << '=' << p;
    lines.emplace_back(lhs, rhs.str());
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [l, r] : lines) out << l << " =>" << r << "\n";
  if (rule.fallback) {
    std::ostringstream rhs;
    rhs.precision(17);
    for (const auto& [b, p] : *rule.fallback) rhs << ' ' << action_label(b, space) << '=' << p;
    out << "default =>" << rhs.str() << "\n";
  }
}

}  // namespace antijam
