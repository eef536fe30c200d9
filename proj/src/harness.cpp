#include "antijam/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "json.hpp"

#include "antijam/omd.hpp"

namespace antijam {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::OmdIwe: return "omd-iwe";
    case Algorithm::OmdAme: return "omd-ame";
    case Algorithm::OmdOme: return "omd-ome";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "omd-iwe") return Algorithm::OmdIwe;
  if (s == "omd-ame") return Algorithm::OmdAme;
  if (s == "omd-ome") return Algorithm::OmdOme;
  throw std::invalid_argument("unknown algorithm '" + s + "' (expected omd-iwe, omd-ame or omd-ome)");
}

std::string to_string(Mode m) { return m == Mode::Abstract ? "abstract" : "signal"; }

Mode mode_from_string(const std::string& s) {
  if (s == "abstract") return Mode::Abstract;
  if (s == "signal") return Mode::Signal;
  throw std::invalid_argument("unknown mode '" + s + "' (expected abstract or signal)");
}

void ExperimentConfig::validate() const {
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (subpulses < 1) throw std::invalid_argument("subpulses must be >= 1");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be finite and >= 0");
  if (!cost_matrix) theta.validate();
  if (algorithm == Algorithm::OmdOme && !k) throw std::invalid_argument("omd-ome requires a history length k");
  if (eta && (!(*eta >= 0.0) || !std::isfinite(*eta))) throw std::invalid_argument("eta must be finite and >= 0");
  if (effective_history_size && !(*effective_history_size >= 1.0)) {
    throw std::invalid_argument("effective_history_size must be >= 1");
  }
  if ((jammer.type == "smsp" || jammer.type == "snj") && jammer.k < 1) {
    throw std::invalid_argument("history-based jammers need k >= 1");
  }
  if (initial_radar.size() != subpulses || initial_jammer.size() != subpulses) {
    throw std::invalid_argument("initial history tuples must have one entry per subpulse");
  }
  if (mode == Mode::Signal) {
    if (cost_matrix) throw std::invalid_argument("signal mode cannot use an explicit cost matrix");
    waveform.validate();
    if (waveform.subpulses != subpulses || waveform.grid.size() != offsets_hz.size()) {
      throw std::invalid_argument("waveform and game disagree on the grid or subpulse count");
    }
  }
}

JammerRule make_jammer(const JammerSpec& spec, const ActionSpace& space) {
  if (spec.type == "stationary") {
    if (spec.dist.empty()) return make_stationary_reference(space);
    SparseDist d;
    for (const auto& [label, p] : spec.dist) d.emplace_back(parse_action_label(label, space), p);
    return JammerRule(space, StationaryRule{std::move(d)});
  }
  if (spec.type == "smsp") {
    if (spec.k == 2) return make_smsp(space);
    throw std::invalid_argument("smsp is defined for k = 2 only");
  }
  if (spec.type == "snj") {
    return JammerRule(space, StochasticHistoryRule{spec.k, spec.w1, spec.w2, spec.count_jammer_actions});
  }
  if (spec.type == "table") {
    if (spec.table) return JammerRule(space, *spec.table);
    if (spec.table_path.empty()) throw std::invalid_argument("table jammer needs a table file");
    return JammerRule(space, load_table_rule(spec.table_path, space));
  }
  throw std::invalid_argument("unknown jammer type '" + spec.type + "' (expected stationary, smsp, snj or table)");
}

Scenario make_scenario(const ExperimentConfig& cfg) {
  cfg.validate();
  FrequencyGrid grid(cfg.carrier_hz, cfg.offsets_hz);
  ActionSpace space(grid.size(), cfg.subpulses, cfg.specials);
  CostMatrix u = cfg.cost_matrix ? *cfg.cost_matrix : build_cost_matrix(space, cfg.theta);
  if (u.rows() != space.radar_count() || u.cols() != space.jammer_count()) {
    throw std::invalid_argument("cost matrix shape does not match the action space");
  }
  JammerRule rule = make_jammer(cfg.jammer, space);
  RoundPair initial{static_cast<std::uint32_t>(space.index_of(cfg.initial_radar)),
                    static_cast<std::uint32_t>(space.index_of(cfg.initial_jammer))};

  double hsize = 1.0;
  bool enumerated = false;
  if (cfg.algorithm == Algorithm::OmdOme) {
    if (cfg.effective_history_size) {
      hsize = *cfg.effective_history_size;
    } else if (auto r = reachable_histories(rule, *cfg.k, cfg.history_budget, initial)) {
      hsize = static_cast<double>(*r);
      enumerated = true;
    } else {
      hsize = std::pow(static_cast<double>(space.radar_count()) * static_cast<double>(space.jammer_count()),
                       static_cast<double>(*cfg.k));
    }
  }

  double eta;
  if (cfg.eta) {
    eta = *cfg.eta;
  } else if (cfg.algorithm == Algorithm::OmdOme) {
    eta = eta_universal(cfg.rounds, static_cast<double>(space.radar_count()), hsize, cfg.sigma).eta;
  } else {
    eta = eta_static(cfg.rounds, static_cast<double>(space.radar_count()), cfg.sigma).eta;
  }
  return Scenario{std::move(space), std::move(grid), std::move(u), std::move(rule), initial, eta, hsize, enumerated};
}

namespace {

struct SignalOutcome {
  std::size_t observed;
  double avg_sinr;
};

SignalOutcome signal_round(const Scenario& sc, const ExperimentConfig& cfg, std::size_t a, std::size_t b,
                           Rng& chan_rng) {
  RadarAction ra = sc.space.radar_action(a);
  JammerAction jb = sc.space.jammer_action(b);
  ComplexSignal s = synth_radar(ra, cfg.waveform);
  ComplexSignal j = synth_jam(jb, cfg.waveform, chan_rng);
  ComplexSignal r = combine_rx(s, j, cfg.waveform, chan_rng);
  PostProcessResult p = post_process(r, ra, cfg.waveform);
  JammerAction obs = extract_jammer_action(p, ra, sc.space);
  double total = 0.0;
  for (double v : p.sinr_per_subpulse) total += std::min(v, cfg.theta.sinr_cap);
  return {sc.space.jammer_index(obs), total / static_cast<double>(p.sinr_per_subpulse.size())};
}

}  // namespace

TrialResult run_trial(const Scenario& sc, const ExperimentConfig& cfg, std::size_t trial, const TrialOptions& opt) {
  const std::size_t n_r = sc.space.radar_count();
  const std::size_t n_j = sc.space.jammer_count();
  const std::size_t N = cfg.rounds;
  const bool ome = cfg.algorithm == Algorithm::OmdOme;
  const std::size_t k_rule = sc.rule.history_length();
  const std::size_t k_learn = ome ? *cfg.k : 0;
  const std::size_t cap = std::max<std::size_t>({k_rule, k_learn, 1});

  Rng radar_rng = Rng::substream(cfg.seed, trial, StreamPurpose::Radar);
  Rng jam_rng = Rng::substream(cfg.seed, trial, StreamPurpose::Jammer);
  Rng theta_rng = Rng::substream(cfg.seed, trial, StreamPurpose::Theta);
  Rng chan_rng = Rng::substream(cfg.seed, trial, StreamPurpose::Channel);

  CostMatrix u_hat = perturb_cost_matrix(sc.u, cfg.sigma, theta_rng);
  HistoryWindow true_window(cap, sc.initial);
  HistoryWindow obs_window(cap, sc.initial);
  ExpWeights global(n_r);
  std::unordered_map<HistoryKey, ExpWeights, HistoryKeyHash> per_history;
  OpponentModel model(n_j);

  TrialResult out;
  out.trial = trial;
  out.static_regret.resize(N);
  out.universal_regret.resize(N);
  out.sinr_db.resize(N);
  out.cum_expected.resize(N);
  if (opt.keep_records) out.records.reserve(N);
  if (opt.keep_cumulative) out.cumulative.resize(N * n_r);

  std::vector<double> uy(n_r), cum(n_r, 0.0), grad(n_r), x_copy;
  double sum_phi = 0.0, sum_best = 0.0;
  const double c = cfg.theta.sinr_cap;

  for (std::size_t n = 1; n <= N; ++n) {
    const SparseDist y = sc.rule.strategy(true_window.key(k_rule));
    std::fill(uy.begin(), uy.end(), 0.0);
    for (const auto& [b, p] : y) {
      auto col = sc.u.column(b);
      for (std::size_t a = 0; a < n_r; ++a) uy[a] += p * col[a];
    }

    HistoryKey h_obs = ome ? obs_window.key(k_learn) : HistoryKey{};
    ExpWeights& learner = ome ? per_history.try_emplace(h_obs, n_r).first->second : global;
    std::span<const double> x = learner.probs();

    double phi = 0.0;
    for (std::size_t a = 0; a < n_r; ++a) phi += x[a] * uy[a];
    double best = *std::min_element(uy.begin(), uy.end());
    for (std::size_t a = 0; a < n_r; ++a) cum[a] += uy[a];
    double comparator = opt.fixed_comparators ? cum[(*opt.fixed_comparators)[n - 1]]
                                              : *std::min_element(cum.begin(), cum.end());
    sum_phi += phi;
    sum_best += best;
    const double dn = static_cast<double>(n);
    out.static_regret[n - 1] = (sum_phi - comparator) / dn;
    out.universal_regret[n - 1] = (sum_phi - sum_best) / dn;
    out.cum_expected[n - 1] = sum_phi;
    if (opt.keep_cumulative) std::copy(cum.begin(), cum.end(), out.cumulative.begin() + (n - 1) * n_r);

    const std::size_t a = sample_action(x, radar_rng);
    const std::size_t b = sample_sparse(y, jam_rng);
    std::size_t b_obs = b;
    double avg;
    double realized;
    if (cfg.mode == Mode::Signal) {
      SignalOutcome so = signal_round(sc, cfg, a, b, chan_rng);
      b_obs = so.observed;
      avg = so.avg_sinr;
      realized = std::clamp((c - avg) / c, 0.0, 1.0);
    } else {
      realized = sc.u(a, b);
      avg = cfg.cost_matrix ? c * (1.0 - realized)
                            : avg_sinr(sc.space.radar_action(a), sc.space.jammer_action(b), cfg.theta);
    }
    out.sinr_db[n - 1] = 10.0 * std::log10(std::max(avg, std::numeric_limits<double>::min()));

    if (opt.keep_records) {
      RoundRecord rec;
      rec.round = n;
      rec.radar = static_cast<std::uint32_t>(a);
      rec.jammer = static_cast<std::uint32_t>(b);
      rec.jammer_observed = static_cast<std::uint32_t>(b_obs);
      rec.realized_cost = realized;
      rec.expected_cost = phi;
      rec.sinr_db = out.sinr_db[n - 1];
      rec.best_response_cost = best;
      rec.static_comparator_cost = comparator;
      if (opt.keep_strategies) rec.strategy.assign(x.begin(), x.end());
      out.records.push_back(std::move(rec));
    }

    if (cfg.redraw_u_hat && n > 1) u_hat = perturb_cost_matrix(sc.u, cfg.sigma, theta_rng);
    switch (cfg.algorithm) {
      case Algorithm::OmdIwe: {
        x_copy.assign(x.begin(), x.end());
        grad = iwe(a, realized, x_copy);
        break;
      }
      case Algorithm::OmdAme: {
        if (b_obs >= n_j) throw std::out_of_range("run_trial: observed jammer action out of range");
        auto col = u_hat.column(b_obs);
        std::copy(col.begin(), col.end(), grad.begin());
        break;
      }
      case Algorithm::OmdOme: {
        if (cfg.model_update == ModelUpdate::BeforeEstimate) model.update(h_obs, b_obs);
        ome_into(model.sparse_query(h_obs), u_hat, grad);
        if (cfg.model_update == ModelUpdate::AfterEstimate) model.update(h_obs, b_obs);
        break;
      }
    }
    learner.step(grad, sc.eta);
    for (double v : learner.probs()) {
      if (!std::isfinite(v)) {
        throw std::runtime_error("trial " + std::to_string(trial) + ": non-finite strategy at round " +
                                 std::to_string(n));
      }
    }
    true_window.push({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)});
    obs_window.push({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b_obs)});
  }
  if (opt.keep_model && ome) out.model = std::move(model);
  return out;
}

// ---------------------------------------------------------------------------
// Aggregation

namespace {

/// Welford accumulation over trials, applied in trial order.
class CurveAccumulator {
 public:
  explicit CurveAccumulator(std::size_t n) : mean_(n, 0.0), m2_(n, 0.0) {}

  void add(const std::vector<double>& v) {
    ++count_;
    const double cnt = static_cast<double>(count_);
    for (std::size_t i = 0; i < mean_.size(); ++i) {
      double d = v[i] - mean_[i];
      mean_[i] += d / cnt;
      m2_[i] += d * (v[i] - mean_[i]);
    }
  }

  Curve finish() const {
    Curve c{mean_, std::vector<double>(mean_.size(), 0.0)};
    if (count_ > 1) {
      const double t = static_cast<double>(count_);
      for (std::size_t i = 0; i < mean_.size(); ++i) {
        double var = std::max(m2_[i], 0.0) / (t - 1.0);
        c.ci[i] = 1.96 * std::sqrt(var) / std::sqrt(t);
      }
    }
    return c;
  }

 private:
  std::vector<double> mean_;
  std::vector<double> m2_;
  std::size_t count_ = 0;
};

}  // namespace

Curve aggregate(const std::vector<const std::vector<double>*>& series) {
  if (series.empty()) return {};
  CurveAccumulator acc(series.front()->size());
  for (const auto* s : series) {
    if (s->size() != series.front()->size()) throw std::invalid_argument("aggregate: series lengths differ");
    acc.add(*s);
  }
  return acc.finish();
}

namespace {

template <typename F>
Curve curve_from_records(const std::vector<std::vector<RoundRecord>>& trials, F&& per_trial) {
  std::vector<std::vector<double>> values;
  values.reserve(trials.size());
  for (const auto& rec : trials) values.push_back(per_trial(rec));
  std::vector<const std::vector<double>*> ptrs;
  for (const auto& v : values) ptrs.push_back(&v);
  return aggregate(ptrs);
}

}  // namespace

Curve static_regret_curve(const std::vector<std::vector<RoundRecord>>& trials) {
  return curve_from_records(trials, [](const std::vector<RoundRecord>& rec) {
    std::vector<double> v(rec.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
      sum += rec[i].expected_cost;
      v[i] = (sum - rec[i].static_comparator_cost) / static_cast<double>(i + 1);
    }
    return v;
  });
}

Curve universal_regret_curve(const std::vector<std::vector<RoundRecord>>& trials) {
  return curve_from_records(trials, [](const std::vector<RoundRecord>& rec) {
    std::vector<double> v(rec.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
      sum += rec[i].expected_cost - rec[i].best_response_cost;
      v[i] = sum / static_cast<double>(i + 1);
    }
    return v;
  });
}

Curve sinr_curve(const std::vector<std::vector<RoundRecord>>& trials) {
  return curve_from_records(trials, [](const std::vector<RoundRecord>& rec) {
    std::vector<double> v(rec.size());
    for (std::size_t i = 0; i < rec.size(); ++i) v[i] = rec[i].sinr_db;
    return v;
  });
}

std::optional<std::size_t> sample_efficiency(const std::vector<double>& sinr_db, double threshold_db) {
  std::size_t n0 = sinr_db.size();
  while (n0 > 0 && sinr_db[n0 - 1] >= threshold_db) --n0;
  if (n0 == sinr_db.size()) return std::nullopt;
  return n0 + 1;
}

// ---------------------------------------------------------------------------
// Experiment driver

namespace {

/// Runs trials [first, last) on `workers` threads; results indexed by trial - first.
std::vector<TrialResult> run_batch(const Scenario& sc, const ExperimentConfig& cfg, std::size_t first,
                                   std::size_t last, std::size_t workers, const TrialOptions& opt) {
  std::vector<TrialResult> out(last - first);
  std::vector<std::exception_ptr> errors(last - first);
  std::atomic<std::size_t> next{first};
  auto work = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < last;) {
      try {
        out[t - first] = run_trial(sc, cfg, t, opt);
      } catch (...) {
        errors[t - first] = std::current_exception();
      }
    }
  };
  workers = std::min(workers, last - first);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::size_t worker_count(const ExperimentConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const ProgressFn& progress) {
  const Scenario sc = make_scenario(cfg);
  const std::size_t N = cfg.rounds;
  const std::size_t T = cfg.trials;
  const std::size_t workers = worker_count(cfg);
  const std::size_t batch = std::max<std::size_t>(workers * 4, 8);

  std::vector<std::uint32_t> pooled;
  if (cfg.comparator == ComparatorMode::Pooled) {
    // First pass: mean cumulative cost vectors across trials, per round.
    const std::size_t n_r = sc.space.radar_count();
    std::vector<double> total(N * n_r, 0.0);
    TrialOptions opt;
    opt.keep_cumulative = true;
    for (std::size_t first = 0; first < T; first += batch) {
      auto results = run_batch(sc, cfg, first, std::min(T, first + batch), workers, opt);
      for (const auto& r : results) {
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += r.cumulative[i];
      }
    }
    pooled.resize(N);
    for (std::size_t n = 0; n < N; ++n) {
      auto row = total.begin() + static_cast<std::ptrdiff_t>(n * n_r);
      pooled[n] = static_cast<std::uint32_t>(std::min_element(row, row + static_cast<std::ptrdiff_t>(n_r)) - row);
    }
  }

  TrialOptions opt;
  opt.keep_records = cfg.trace;
  if (!pooled.empty()) opt.fixed_comparators = &pooled;

  std::ofstream trace;
  if (cfg.trace && !cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    trace.open(std::filesystem::path(cfg.output_dir) / "trace.csv");
    if (!trace) throw std::runtime_error("cannot write trace.csv in " + cfg.output_dir);
    trace << "trial,round,radar,jammer,jammer_observed,realized_cost,expected_cost,sinr_db,"
             "best_response_cost,static_comparator_cost\n";
  }

  CurveAccumulator st(N), un(N), sn(N);
  for (std::size_t first = 0; first < T; first += batch) {
    auto results = run_batch(sc, cfg, first, std::min(T, first + batch), workers, opt);
    for (const auto& r : results) {
      st.add(r.static_regret);
      un.add(r.universal_regret);
      sn.add(r.sinr_db);
      if (trace.is_open()) {
        char buf[256];
        for (const auto& rec : r.records) {
          std::snprintf(buf, sizeof buf, "%zu,%zu,\"%s\",\"%s\",\"%s\",%.12g,%.12g,%.12g,%.12g,%.12g\n", r.trial, rec.round,
                        action_label(rec.radar, sc.space).c_str(), action_label(rec.jammer, sc.space).c_str(),
                        action_label(rec.jammer_observed, sc.space).c_str(), rec.realized_cost,
                        rec.expected_cost, rec.sinr_db, rec.best_response_cost, rec.static_comparator_cost);
          trace << buf;
        }
      }
    }
    if (progress) progress(std::min(T, first + batch), T);
  }

  ExperimentResult res;
  res.static_regret = st.finish();
  res.universal_regret = un.finish();
  res.sinr_db = sn.finish();
  res.eta = sc.eta;
  res.history_size = sc.history_size;
  if (cfg.cost_matrix) {
    res.ceiling_db = 10.0 * std::log10(cfg.theta.sinr_cap);
  } else {
    res.ceiling_db = 10.0 * std::log10(cfg.theta.ceiling());
  }
  res.threshold_db = cfg.sinr_threshold_db.value_or(res.ceiling_db - 0.35);
  res.sample_efficiency = sample_efficiency(res.sinr_db.mean, res.threshold_db);

  if (!cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    write_curves_csv((std::filesystem::path(cfg.output_dir) / "curves.csv").string(), res);
    write_summary_json((std::filesystem::path(cfg.output_dir) / "summary.json").string(), cfg, res);
  }
  return res;
}

void write_curves_csv(const std::string& path, const ExperimentResult& r) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "round,avg_static_regret,static_ci,avg_universal_regret,universal_ci,avg_sinr_db,sinr_ci\n";
  char buf[256];
  for (std::size_t i = 0; i < r.rounds(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", i + 1, r.static_regret.mean[i],
                  r.static_regret.ci[i], r.universal_regret.mean[i], r.universal_regret.ci[i], r.sinr_db.mean[i],
                  r.sinr_db.ci[i]);
    f << buf;
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

void write_summary_json(const std::string& path, const ExperimentConfig& cfg, const ExperimentResult& r) {
  using nlohmann::json;
  json j;
  j["config"] = {
      {"algorithm", to_string(cfg.algorithm)},
      {"jammer", cfg.jammer.type},
      {"mode", to_string(cfg.mode)},
      {"rounds", cfg.rounds},
      {"trials", cfg.trials},
      {"seed", cfg.seed},
      {"subpulses", cfg.subpulses},
      {"offsets_hz", cfg.offsets_hz},
      {"sigma", cfg.sigma},
      {"theta", {{"p_radar", cfg.theta.p_radar}, {"p_jam", cfg.theta.p_jam},
                 {"p_noise", cfg.theta.p_noise}, {"sinr_cap", cfg.theta.sinr_cap}}},
      {"comparator", cfg.comparator == ComparatorMode::Pooled ? "pooled" : "per-trial"},
      {"model_update", cfg.model_update == ModelUpdate::BeforeEstimate ? "before" : "after"},
  };
  if (cfg.k) j["config"]["k"] = *cfg.k;
  if (cfg.jammer.type == "smsp" || cfg.jammer.type == "snj") j["config"]["jammer_k"] = cfg.jammer.k;
  j["eta"] = r.eta;
  j["history_size"] = r.history_size;
  j["ceiling_db"] = r.ceiling_db;
  j["threshold_db"] = r.threshold_db;
  j["sample_efficiency"] = r.sample_efficiency ? json(*r.sample_efficiency) : json("not reached");
  const std::size_t last = r.rounds() - 1;
  j["final"] = {{"avg_static_regret", r.static_regret.mean[last]},
                {"avg_universal_regret", r.universal_regret.mean[last]},
                {"avg_sinr_db", r.sinr_db.mean[last]}};
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << '\n';
}

void write_trace_csv(const std::string& path, const std::vector<RoundRecord>& records, const ActionSpace& space) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "round,radar,jammer,jammer_observed,realized_cost,expected_cost,sinr_db,best_response_cost,"
       "static_comparator_cost\n";
  char buf[256];
  for (const auto& rec : records) {
    std::snprintf(buf, sizeof buf, "%zu,\"%s\",\"%s\",\"%s\",%.12g,%.12g,%.12g,%.12g,%.12g\n", rec.round,
                  action_label(rec.radar, space).c_str(), action_label(rec.jammer, space).c_str(),
                  action_label(rec.jammer_observed, space).c_str(), rec.realized_cost, rec.expected_cost,
                  rec.sinr_db, rec.best_response_cost, rec.static_comparator_cost);
    f << buf;
  }
}

}  // namespace antijam
