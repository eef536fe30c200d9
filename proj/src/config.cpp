#include "antijam/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace antijam {

using nlohmann::json;

ConfigError::ConfigError(const std::string& source, std::size_t line, const std::string& msg)
    : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + msg), line_(line) {}

namespace {

std::size_t line_at_byte(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

class Reader {
 public:
  Reader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError(source_, line_of(key), (key.empty() ? "" : "'" + key + "': ") + msg);
  }

  /// First line mentioning "key"; good enough for diagnostics in hand-written files.
  std::size_t line_of(const std::string& key) const {
    if (key.empty()) return 0;
    auto leaf = key.substr(key.rfind('.') == std::string::npos ? 0 : key.rfind('.') + 1);
    auto pos = text_.find("\"" + leaf + "\"");
    return pos == std::string::npos ? 0 : line_at_byte(text_, pos);
  }

  void reject_unknown(const json& obj, const std::string& prefix, const std::set<std::string>& allowed) const {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!allowed.count(it.key())) fail(prefix + it.key(), "unknown key");
    }
  }

  template <typename T>
  T get(const json& obj, const std::string& key, const std::string& path) const {
    const json& v = obj.at(key);
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) fail(path, "expected a number");
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) fail(path, "expected true or false");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) fail(path, "expected a string");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0)) {
          fail(path, "expected a non-negative integer");
        }
      }
      return v.get<T>();
    } catch (const json::exception& e) {
      fail(path, e.what());
    }
  }

  template <typename T>
  void opt(const json& obj, const std::string& key, const std::string& path, T& out) const {
    if (obj.contains(key)) out = get<T>(obj, key, path);
  }

  template <typename T>
  std::vector<T> list(const json& obj, const std::string& key, const std::string& path) const {
    const json& v = obj.at(key);
    if (!v.is_array()) fail(path, "expected a list");
    std::vector<T> out;
    for (const auto& e : v) {
      if constexpr (std::is_arithmetic_v<T>) {
        if (!e.is_number()) fail(path, "expected a list of numbers");
      } else {
        if (!e.is_string()) fail(path, "expected a list of strings");
      }
      out.push_back(e.get<T>());
    }
    return out;
  }

  const std::string& source() const { return source_; }

 private:
  const std::string& text_;
  std::string source_;
};

FreqTuple to_tuple(const std::vector<double>& v) {
  FreqTuple t;
  for (double d : v) t.push_back(static_cast<FreqIndex>(d));
  return t;
}

void read_waveform(const Reader& r, const json& j, WaveformConfig& w, const ExperimentConfig& cfg) {
  r.reject_unknown(j, "signal.",
                   {"sample_rate", "subpulse_duration", "envelope", "lfm_bandwidth", "amplitude", "range_m",
                    "attenuation", "noise_power", "jam_power", "jam_bandwidth", "filter_width", "jam_detect_ratio",
                    "pulse_detect_ratio", "full_spectrum_monitor"});
  r.opt(j, "sample_rate", "signal.sample_rate", w.sample_rate);
  r.opt(j, "subpulse_duration", "signal.subpulse_duration", w.subpulse_duration);
  if (j.contains("envelope")) {
    auto e = r.get<std::string>(j, "envelope", "signal.envelope");
    if (e == "rect") {
      w.envelope = Envelope::Rect;
    } else if (e == "lfm") {
      w.envelope = Envelope::Lfm;
    } else {
      r.fail("signal.envelope", "expected rect or lfm");
    }
  }
  r.opt(j, "lfm_bandwidth", "signal.lfm_bandwidth", w.lfm_bandwidth);
  r.opt(j, "amplitude", "signal.amplitude", w.amplitude);
  r.opt(j, "range_m", "signal.range_m", w.range_m);
  if (j.contains("attenuation")) {
    auto a = r.list<double>(j, "attenuation", "signal.attenuation");
    if (a.size() != 2) r.fail("signal.attenuation", "expected [re, im]");
    w.attenuation = {a[0], a[1]};
  }
  r.opt(j, "noise_power", "signal.noise_power", w.noise_power);
  r.opt(j, "jam_power", "signal.jam_power", w.jam_power);
  r.opt(j, "jam_bandwidth", "signal.jam_bandwidth", w.jam_bandwidth);
  r.opt(j, "filter_width", "signal.filter_width", w.filter_width);
  r.opt(j, "jam_detect_ratio", "signal.jam_detect_ratio", w.jam_detect_ratio);
  r.opt(j, "pulse_detect_ratio", "signal.pulse_detect_ratio", w.pulse_detect_ratio);
  r.opt(j, "full_spectrum_monitor", "signal.full_spectrum_monitor", w.full_spectrum_monitor);
  w.subpulses = cfg.subpulses;
  w.grid = FrequencyGrid(cfg.carrier_hz, cfg.offsets_hz);
}

void read_jammer(const Reader& r, const json& j, JammerSpec& js, const std::filesystem::path& base) {
  r.reject_unknown(j, "jammer.", {"type", "k", "w1", "w2", "count_jammer_actions", "dist", "table"});
  if (!j.contains("type")) r.fail("jammer", "missing 'type'");
  js.type = r.get<std::string>(j, "type", "jammer.type");
  r.opt(j, "k", "jammer.k", js.k);
  r.opt(j, "w1", "jammer.w1", js.w1);
  r.opt(j, "w2", "jammer.w2", js.w2);
  r.opt(j, "count_jammer_actions", "jammer.count_jammer_actions", js.count_jammer_actions);
  if (j.contains("dist")) {
    const json& d = j.at("dist");
    if (!d.is_object()) r.fail("jammer.dist", "expected an object of action: probability");
    for (auto it = d.begin(); it != d.end(); ++it) {
      if (!it.value().is_number()) r.fail("jammer.dist", "probability for '" + it.key() + "' is not a number");
      js.dist.emplace_back(it.key(), it.value().get<double>());
    }
  }
  if (j.contains("table")) {
    std::filesystem::path p = r.get<std::string>(j, "table", "jammer.table");
    if (p.is_relative()) p = base / p;
    js.table_path = p.string();
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source, bool validate) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source, line_at_byte(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
  }
  Reader r(text, source);
  if (!root.is_object()) throw ConfigError(source, 1, "top level must be an object");
  r.reject_unknown(root, "",
                   {"version", "game", "theta", "sigma", "redraw_u_hat", "rounds", "trials", "seed", "algorithm", "k",
                    "eta", "effective_history_size", "model_update", "history_budget", "jammer", "mode", "signal",
                    "comparator", "sinr_threshold_db", "cost_matrix", "threads", "trace", "output_dir"});
  if (!root.contains("version")) r.fail("version", "missing schema version");
  if (r.get<int>(root, "version", "version") != kConfigVersion) {
    r.fail("version", "unsupported schema version (expected " + std::to_string(kConfigVersion) + ")");
  }

  ExperimentConfig cfg;
  const std::filesystem::path base =
      source.empty() || source.front() == '<' ? std::filesystem::path(".") : std::filesystem::path(source).parent_path();

  if (root.contains("game")) {
    const json& g = root.at("game");
    r.reject_unknown(g, "game.", {"carrier_hz", "offsets_hz", "subpulses", "specials", "initial_radar", "initial_jammer"});
    r.opt(g, "carrier_hz", "game.carrier_hz", cfg.carrier_hz);
    if (g.contains("offsets_hz")) cfg.offsets_hz = r.list<double>(g, "offsets_hz", "game.offsets_hz");
    r.opt(g, "subpulses", "game.subpulses", cfg.subpulses);
    if (g.contains("specials")) {
      cfg.specials.clear();
      for (const auto& s : r.list<std::string>(g, "specials", "game.specials")) {
        try {
          cfg.specials.push_back(special_from_string(s));
        } catch (const std::exception& e) {
          r.fail("game.specials", e.what());
        }
      }
    }
    cfg.initial_radar.assign(cfg.subpulses, 0);
    cfg.initial_jammer.assign(cfg.subpulses, 0);
    if (g.contains("initial_radar")) cfg.initial_radar = to_tuple(r.list<double>(g, "initial_radar", "game.initial_radar"));
    if (g.contains("initial_jammer")) {
      cfg.initial_jammer = to_tuple(r.list<double>(g, "initial_jammer", "game.initial_jammer"));
    }
  }

  if (root.contains("mode")) {
    try {
      cfg.mode = mode_from_string(r.get<std::string>(root, "mode", "mode"));
    } catch (const std::invalid_argument& e) {
      r.fail("mode", e.what());
    }
  }

  bool have_cap = false;
  if (root.contains("theta")) {
    const json& t = root.at("theta");
    r.reject_unknown(t, "theta.", {"p_radar", "p_jam", "p_noise", "sinr_cap"});
    if (cfg.mode == Mode::Abstract) {
      for (const char* key : {"p_radar", "p_jam", "p_noise"}) {
        if (!t.contains(key)) r.fail(std::string("theta.") + key, "required");
      }
    }
    r.opt(t, "p_radar", "theta.p_radar", cfg.theta.p_radar);
    r.opt(t, "p_jam", "theta.p_jam", cfg.theta.p_jam);
    r.opt(t, "p_noise", "theta.p_noise", cfg.theta.p_noise);
    if (t.contains("sinr_cap")) {
      cfg.theta.sinr_cap = r.get<double>(t, "sinr_cap", "theta.sinr_cap");
      have_cap = true;
    }
  }
  if (!have_cap) r.fail("theta", "theta.sinr_cap is required (the SINR cap c has no default)");

  if (cfg.mode == Mode::Signal || root.contains("signal")) {
    if (root.contains("signal")) read_waveform(r, root.at("signal"), cfg.waveform, cfg);
    else read_waveform(r, json::object(), cfg.waveform, cfg);
    if (cfg.mode == Mode::Signal) cfg.theta = cfg.waveform.analytic_theta(cfg.theta.sinr_cap);
  }

  r.opt(root, "sigma", "sigma", cfg.sigma);
  r.opt(root, "redraw_u_hat", "redraw_u_hat", cfg.redraw_u_hat);
  r.opt(root, "rounds", "rounds", cfg.rounds);
  r.opt(root, "trials", "trials", cfg.trials);
  r.opt(root, "seed", "seed", cfg.seed);
  if (root.contains("algorithm")) {
    try {
      cfg.algorithm = algorithm_from_string(r.get<std::string>(root, "algorithm", "algorithm"));
    } catch (const std::invalid_argument& e) {
      r.fail("algorithm", e.what());
    }
  }
  if (root.contains("k")) cfg.k = r.get<std::size_t>(root, "k", "k");
  if (root.contains("eta")) cfg.eta = r.get<double>(root, "eta", "eta");
  if (root.contains("effective_history_size")) {
    cfg.effective_history_size = r.get<double>(root, "effective_history_size", "effective_history_size");
  }
  if (root.contains("model_update")) {
    auto m = r.get<std::string>(root, "model_update", "model_update");
    if (m == "after") {
      cfg.model_update = ModelUpdate::AfterEstimate;
    } else if (m == "before") {
      cfg.model_update = ModelUpdate::BeforeEstimate;
    } else {
      r.fail("model_update", "expected before or after");
    }
  }
  r.opt(root, "history_budget", "history_budget", cfg.history_budget);
  if (root.contains("jammer")) {
    if (!root.at("jammer").is_object()) r.fail("jammer", "expected an object");
    read_jammer(r, root.at("jammer"), cfg.jammer, base);
  }
  if (root.contains("comparator")) {
    auto c = r.get<std::string>(root, "comparator", "comparator");
    if (c == "per-trial") {
      cfg.comparator = ComparatorMode::PerTrial;
    } else if (c == "pooled") {
      cfg.comparator = ComparatorMode::Pooled;
    } else {
      r.fail("comparator", "expected per-trial or pooled");
    }
  }
  if (root.contains("sinr_threshold_db")) cfg.sinr_threshold_db = r.get<double>(root, "sinr_threshold_db", "sinr_threshold_db");
  if (root.contains("cost_matrix")) {
    const json& m = root.at("cost_matrix");
    if (!m.is_array()) r.fail("cost_matrix", "expected a list of rows");
    std::vector<std::vector<double>> rows;
    for (const auto& row : m) {
      if (!row.is_array()) r.fail("cost_matrix", "expected a list of rows");
      rows.push_back(row.get<std::vector<double>>());
    }
    try {
      cfg.cost_matrix = CostMatrix::from_rows(rows);
    } catch (const std::exception& e) {
      r.fail("cost_matrix", e.what());
    }
  }
  r.opt(root, "threads", "threads", cfg.threads);
  r.opt(root, "trace", "trace", cfg.trace);
  r.opt(root, "output_dir", "output_dir", cfg.output_dir);

  if (!validate) return cfg;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source, 0, e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path, bool validate) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path, 0, "cannot open config file");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path, validate);
}

}  // namespace antijam
