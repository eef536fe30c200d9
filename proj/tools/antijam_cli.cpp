// antijam: run, sweep and summarize radar anti-jamming experiments.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "antijam/config.hpp"
#include "antijam/harness.hpp"
#include "antijam/signal.hpp"

namespace fs = std::filesystem;
using namespace antijam;

namespace {

struct Overrides {
  std::string algo, jammer, mode, out, comparator, model_update;
  std::optional<std::size_t> rounds, trials, k, threads;
  std::optional<std::uint64_t> seed;
  std::optional<double> eta;
  bool trace = false;
  bool quiet = false;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--algo", o.algo, "omd-iwe | omd-ame | omd-ome");
  cmd->add_option("--jammer", o.jammer, "stationary | smsp | snj | table");
  cmd->add_option("--rounds", o.rounds, "rounds per trial (N)");
  cmd->add_option("--trials", o.trials, "independent trials (T)");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--mode", o.mode, "abstract | signal");
  cmd->add_option("--k", o.k, "history length for omd-ome");
  cmd->add_option("--eta", o.eta, "learning rate override");
  cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  cmd->add_option("--comparator", o.comparator, "per-trial | pooled");
  cmd->add_option("--model-update", o.model_update, "before | after: when omd-ome folds b_n into its model");
  cmd->add_flag("--trace", o.trace, "write trace.csv with every round of every trial");
  cmd->add_flag("-q,--quiet", o.quiet, "no progress output");
}

void apply(ExperimentConfig& cfg, const Overrides& o) {
  if (!o.algo.empty()) cfg.algorithm = algorithm_from_string(o.algo);
  if (!o.jammer.empty()) cfg.jammer.type = o.jammer;
  if (o.rounds) cfg.rounds = *o.rounds;
  if (o.trials) cfg.trials = *o.trials;
  if (o.seed) cfg.seed = *o.seed;
  if (!o.mode.empty()) {
    cfg.mode = mode_from_string(o.mode);
    if (cfg.mode == Mode::Signal) cfg.theta = cfg.waveform.analytic_theta(cfg.theta.sinr_cap);
  }
  if (o.k) cfg.k = *o.k;
  if (o.eta) cfg.eta = *o.eta;
  if (o.threads) cfg.threads = *o.threads;
  if (o.trace) cfg.trace = true;
  if (!o.comparator.empty()) {
    if (o.comparator == "pooled") {
      cfg.comparator = ComparatorMode::Pooled;
    } else if (o.comparator == "per-trial") {
      cfg.comparator = ComparatorMode::PerTrial;
    } else {
      throw std::invalid_argument("--comparator must be per-trial or pooled");
    }
  }
  if (!o.model_update.empty()) {
    if (o.model_update == "before") {
      cfg.model_update = ModelUpdate::BeforeEstimate;
    } else if (o.model_update == "after") {
      cfg.model_update = ModelUpdate::AfterEstimate;
    } else {
      throw std::invalid_argument("--model-update must be before or after");
    }
  }
  if (!o.out.empty()) cfg.output_dir = o.out;
}

std::string format_efficiency(const std::optional<std::size_t>& n) {
  return n ? std::to_string(*n) : std::string("not reached");
}

void print_summary(const ExperimentConfig& cfg, const ExperimentResult& r, double seconds) {
  const std::size_t last = r.rounds() - 1;
  std::printf("%-8s %-10s N=%zu T=%zu eta=%.6g |H|=%.6g\n", to_string(cfg.algorithm).c_str(), cfg.jammer.type.c_str(),
              cfg.rounds, cfg.trials, r.eta, r.history_size);
  std::printf("  avg static regret    %.6g +/- %.3g\n", r.static_regret.mean[last], r.static_regret.ci[last]);
  std::printf("  avg universal regret %.6g +/- %.3g\n", r.universal_regret.mean[last], r.universal_regret.ci[last]);
  std::printf("  avg SINR             %.4f dB (ceiling %.4f dB)\n", r.sinr_db.mean[last], r.ceiling_db);
  std::printf("  rounds to %.2f dB    %s\n", r.threshold_db, format_efficiency(r.sample_efficiency).c_str());
  std::printf("  wall time            %.1f s\n", seconds);
}

ExperimentResult run_one(const ExperimentConfig& cfg, bool quiet) {
  ProgressFn progress;
  if (!quiet) {
    progress = [](std::size_t done, std::size_t total) {
      std::fprintf(stderr, "\r  trials %zu/%zu", done, total);
      if (done == total) std::fprintf(stderr, "\n");
    };
  }
  auto t0 = std::chrono::steady_clock::now();
  ExperimentResult r = run_experiment(cfg, progress);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  print_summary(cfg, r, secs);
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_summarize(const std::vector<std::string>& dirs) {
  std::vector<fs::path> files;
  for (const auto& d : dirs) {
    if (fs::is_regular_file(d)) {
      files.emplace_back(d);
      continue;
    }
    if (!fs::is_directory(d)) throw std::runtime_error("no such file or directory: " + d);
    for (const auto& e : fs::recursive_directory_iterator(d)) {
      if (e.is_regular_file() && e.path().filename() == "summary.json") files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no summary.json found");
  std::printf("%-10s %-12s %10s %14s %14s %16s\n", "algorithm", "jammer", "threshold", "static", "universal",
              "rounds-to-thr");
  for (const auto& f : files) {
    std::ifstream in(f);
    auto j = nlohmann::json::parse(in);
    std::string eff = j["sample_efficiency"].is_number() ? std::to_string(j["sample_efficiency"].get<std::size_t>())
                                                         : j["sample_efficiency"].get<std::string>();
    std::printf("%-10s %-12s %9.2fdB %14.6g %14.6g %16s\n", j["config"]["algorithm"].get<std::string>().c_str(),
                j["config"]["jammer"].get<std::string>().c_str(), j["threshold_db"].get<double>(),
                j["final"]["avg_static_regret"].get<double>(), j["final"]["avg_universal_regret"].get<double>(),
                eff.c_str());
  }
  return 0;
}

FreqTuple parse_freqs(const std::string& s, std::size_t num_freqs, std::size_t subpulses) {
  FreqTuple t;
  for (const auto& item : split(s, ',')) {
    int f = std::stoi(item);
    if (f < 0 || static_cast<std::size_t>(f) >= num_freqs) {
      throw std::invalid_argument("frequency index " + item + " out of range (grid has " + std::to_string(num_freqs) +
                                  " frequencies, indexed from 0)");
    }
    t.push_back(static_cast<FreqIndex>(f));
  }
  if (t.size() != subpulses) {
    throw std::invalid_argument("'" + s + "' has " + std::to_string(t.size()) + " entries, expected " +
                                std::to_string(subpulses));
  }
  return t;
}

int cmd_signal(const std::string& config, const std::string& radar, const std::string& jammer, std::uint64_t seed,
               const std::string& iq, const std::string& spectrogram, std::size_t frame) {
  ExperimentConfig cfg;
  double cap = 0.0;
  if (!config.empty()) {
    cfg = load_config(config, false);
    cap = cfg.theta.sinr_cap;
  }
  WaveformConfig w = cfg.waveform;
  const std::size_t nf = w.grid.size();
  RadarAction a{parse_freqs(radar, nf, w.subpulses)};
  JammerAction b = jammer == "OBSERVE" ? JammerAction(SpecialAction::Observe)
                                       : JammerAction(parse_freqs(jammer, nf, w.subpulses));
  Rng rng = Rng::substream(seed, 0, StreamPurpose::Channel);
  ComplexSignal s = synth_radar(a, w);
  ComplexSignal j = synth_jam(b, w, rng);
  ComplexSignal r = combine_rx(s, j, w, rng);
  PostProcessResult p = post_process(r, a, w);
  ScenarioParams th = w.analytic_theta(cap > 0 ? cap : 1e300);
  std::printf("pulse found at sample %zu (expected %zu)\n", p.pulse_start, 2 * w.delay_samples());
  std::printf("P_R_hat=%.4g P_0_hat=%.4g (analytic P_R=%.4g P_0=%.4g P_J=%.4g)\n", p.p_radar_hat, p.p_noise_hat,
              th.p_radar, th.p_noise, th.p_jam);
  for (std::size_t m = 0; m < w.subpulses; ++m) {
    std::string det = p.jam_freqs[m] ? std::to_string(*p.jam_freqs[m]) : std::string("-");
    double analytic = sinr(a.freqs[m], b.freq_at(m), th);
    std::printf("subpulse %zu: radar f%d jam %s  SINR %.2f dB (analytic %.2f dB)\n", m + 1, a.freqs[m], det.c_str(),
                10 * std::log10(p.sinr_per_subpulse[m]), 10 * std::log10(analytic));
  }
  std::printf("jammed subpulses:");
  for (auto m : p.jammed_subpulses(a)) std::printf(" %zu", m + 1);
  std::printf("\n");
  if (!iq.empty()) write_iq(iq, r, w);
  if (!spectrogram.empty()) write_spectrogram_csv(spectrogram, r, frame);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radar anti-jamming experiments: online mirror descent against rule-based jammers"};
  app.require_subcommand(1);

  std::string config;
  Overrides ov;
  auto* run = app.add_subcommand("run", "run one experiment");
  run->add_option("--config", config, "JSON config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", ov.out, "output directory for curves.csv and summary.json");
  add_overrides(run, ov);

  std::string algos = "omd-iwe,omd-ame,omd-ome", jammers = "stationary,smsp,snj";
  auto* sweep = app.add_subcommand("sweep", "run every algorithm x jammer combination");
  sweep->add_option("--config", config, "JSON config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--algos", algos, "comma-separated algorithms");
  sweep->add_option("--jammers", jammers, "comma-separated jammer types");
  sweep->add_option("--out", ov.out, "output root; one subdirectory per combination")->required();
  add_overrides(sweep, ov);

  std::vector<std::string> dirs;
  auto* summarize = app.add_subcommand("summarize", "print sample-efficiency counts from stored results");
  summarize->add_option("paths", dirs, "result directories or summary.json files")->required();

  std::string radar = "0,1,1,2", jam = "0,0,1,1", iq, spectrogram;
  std::uint64_t sig_seed = 1;
  std::size_t frame = 64;
  auto* signal = app.add_subcommand("signal", "simulate one pulse at signal level and report detection");
  signal->add_option("--config", config, "JSON config (signal block and theta.sinr_cap)");
  signal->add_option("--radar", radar, "radar frequency indices, e.g. 0,1,1,2");
  signal->add_option("--jam", jam, "jammer frequency indices or OBSERVE");
  signal->add_option("--seed", sig_seed, "noise seed");
  signal->add_option("--iq", iq, "write received samples as interleaved float32 I/Q");
  signal->add_option("--spectrogram", spectrogram, "write spectrogram CSV");
  signal->add_option("--frame", frame, "spectrogram frame length in samples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      ExperimentConfig cfg = load_config(config, false);
      apply(cfg, ov);
      cfg.validate();
      run_one(cfg, ov.quiet);
      if (!cfg.output_dir.empty()) std::printf("wrote %s\n", cfg.output_dir.c_str());
      return 0;
    }
    if (*sweep) {
      ExperimentConfig base = load_config(config, false);
      apply(base, ov);
      for (const auto& alg : split(algos, ',')) {
        for (const auto& jm : split(jammers, ',')) {
          ExperimentConfig cfg = base;
          cfg.algorithm = algorithm_from_string(alg);
          cfg.jammer.type = jm;
          if (cfg.algorithm == Algorithm::OmdOme && !cfg.k) cfg.k = jm == "stationary" ? 0 : 1;
          cfg.output_dir = (fs::path(ov.out) / (alg + "_" + jm)).string();
          cfg.validate();
          run_one(cfg, ov.quiet);
        }
      }
      return 0;
    }
    if (*summarize) return cmd_summarize(dirs);
    if (*signal) return cmd_signal(config, radar, jam, sig_seed, iq, spectrogram, frame);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
