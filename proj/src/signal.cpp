#include "antijam/signal.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace antijam {

namespace {

constexpr double kLightSpeed = 299'792'458.0;

struct PlanCache {
  std::mutex mu;
  std::map<std::pair<std::size_t, bool>, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, p] : plans) fftw_destroy_plan(p);
  }

  fftw_plan get(std::size_t n, bool inverse) {
    std::lock_guard lock(mu);
    auto it = plans.find({n, inverse});
    if (it != plans.end()) return it->second;
    std::vector<cplx> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::runtime_error("fftw: plan creation failed");
    plans.emplace(std::make_pair(n, inverse), p);
    return p;
  }
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

/// Signed frequency (Hz) of FFT bin k for an n-point transform.
double bin_freq(std::size_t k, std::size_t n, double fs) {
  double kk = k < (n + 1) / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
  return kk * fs / static_cast<double>(n);
}

bool in_band(double f, double center, double width) { return f >= center - width / 2 && f < center + width / 2; }

double envelope_bandwidth(const WaveformConfig& cfg) {
  return cfg.envelope == Envelope::Lfm ? cfg.lfm_bandwidth : 1.0 / cfg.subpulse_duration;
}

/// Baseband envelope a(tau) at time tau into the subpulse.
cplx envelope_at(const WaveformConfig& cfg, double tau) {
  if (cfg.envelope == Envelope::Rect) return {cfg.amplitude, 0.0};
  double phase = std::numbers::pi * cfg.lfm_bandwidth * (tau * tau / cfg.subpulse_duration - tau);
  return std::polar(cfg.amplitude, phase);
}

/// One subpulse of the radar template at frequency index f.
std::vector<cplx> subpulse_template(const WaveformConfig& cfg, FreqIndex f) {
  const std::size_t spp = cfg.samples_per_subpulse();
  std::vector<cplx> out(spp);
  const double fo = cfg.grid.offset(f);
  for (std::size_t i = 0; i < spp; ++i) {
    double t = static_cast<double>(i) / cfg.sample_rate;
    out[i] = envelope_at(cfg, t) * std::polar(1.0, 2.0 * std::numbers::pi * fo * t);
  }
  return out;
}

/// Zeroes every bin outside [center - width/2, center + width/2); returns the kept bin count.
std::size_t brick_wall(std::vector<cplx>& spec, double fs, double center, double width) {
  std::size_t kept = 0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    if (in_band(bin_freq(k, spec.size(), fs), center, width)) {
      ++kept;
    } else {
      spec[k] = 0.0;
    }
  }
  return kept;
}

std::uint32_t to_little_endian(std::uint32_t u) {
  if constexpr (std::endian::native == std::endian::big) {
    u = ((u & 0xffu) << 24) | ((u & 0xff00u) << 8) | ((u >> 8) & 0xff00u) | (u >> 24);
  }
  return u;
}

}  // namespace

void fft_inplace(std::vector<cplx>& x, bool inverse) {
  if (x.empty()) return;
  fftw_plan p = plan_cache().get(x.size(), inverse);
  auto* buf = reinterpret_cast<fftw_complex*>(x.data());
  fftw_execute_dft(p, buf, buf);
  if (inverse) {
    const double s = 1.0 / static_cast<double>(x.size());
    for (auto& z : x) z *= s;
  }
}

// ---------------------------------------------------------------------------
// WaveformConfig

std::size_t WaveformConfig::samples_per_subpulse() const {
  return static_cast<std::size_t>(std::llround(subpulse_duration * sample_rate));
}

std::size_t WaveformConfig::delay_samples() const {
  return static_cast<std::size_t>(std::llround(range_m / kLightSpeed * sample_rate));
}

std::size_t WaveformConfig::buffer_samples() const { return 2 * delay_samples() + 2 * pulse_samples(); }

void WaveformConfig::validate() const {
  if (!(sample_rate > 0) || !(subpulse_duration > 0)) throw std::invalid_argument("waveform: rates must be positive");
  if (subpulses < 1) throw std::invalid_argument("waveform: need at least one subpulse");
  const double spp = subpulse_duration * sample_rate;
  if (std::abs(spp - std::round(spp)) > 1e-6 || std::round(spp) < 16) {
    throw std::invalid_argument("waveform: T_c * f_s must be an integer >= 16");
  }
  double max_offset = 0.0;
  for (double o : grid.offsets()) max_offset = std::max(max_offset, std::abs(o));
  if (!(sample_rate > 2.0 * (max_offset + envelope_bandwidth(*this)))) {
    throw std::invalid_argument("waveform: sample rate too low for the grid (aliasing)");
  }
  if (!(max_offset + band_width() / 2 <= sample_rate / 2)) {
    throw std::invalid_argument("waveform: filter bands exceed the Nyquist range");
  }
  if (envelope == Envelope::Lfm && !(lfm_bandwidth > 0 && lfm_bandwidth <= band_width())) {
    throw std::invalid_argument("waveform: LFM bandwidth must be in (0, filter width]");
  }
  if (!(jam_bandwidth > 0 && jam_bandwidth <= band_width())) {
    throw std::invalid_argument("waveform: jam bandwidth must be in (0, filter width]");
  }
  if (!(noise_power >= 0) || !(jam_power >= 0) || !(amplitude > 0) || !(range_m >= 0)) {
    throw std::invalid_argument("waveform: powers must be non-negative and the amplitude positive");
  }
  if (!(jam_detect_ratio > 0) || !(pulse_detect_ratio > 1)) throw std::invalid_argument("waveform: bad thresholds");
}

ScenarioParams WaveformConfig::analytic_theta(double sinr_cap) const {
  ScenarioParams t;
  t.p_radar = std::norm(attenuation) * amplitude * amplitude;
  t.p_jam = jam_power;
  t.p_noise = noise_power * band_width() / sample_rate;
  t.sinr_cap = sinr_cap;
  return t;
}

// ---------------------------------------------------------------------------
// Synthesis and channel

ComplexSignal synth_radar(const RadarAction& a, const WaveformConfig& cfg) {
  cfg.validate();
  if (a.freqs.size() != cfg.subpulses) throw std::invalid_argument("synth_radar: action length != M");
  const std::size_t spp = cfg.samples_per_subpulse();
  ComplexSignal out{std::vector<cplx>(cfg.pulse_samples()), cfg.sample_rate};
  for (std::size_t m = 0; m < cfg.subpulses; ++m) {
    const double fo = cfg.grid.offset(a.freqs[m]);
    for (std::size_t i = 0; i < spp; ++i) {
      const std::size_t n = m * spp + i;
      const double t = static_cast<double>(n) / cfg.sample_rate;
      const double tau = static_cast<double>(i) / cfg.sample_rate;
      out.samples[n] = envelope_at(cfg, tau) * std::polar(1.0, 2.0 * std::numbers::pi * fo * t);
    }
  }
  return out;
}

ComplexSignal synth_jam(const JammerAction& b, const WaveformConfig& cfg, Rng& rng) {
  cfg.validate();
  const std::size_t d = cfg.delay_samples();
  const std::size_t spp = cfg.samples_per_subpulse();
  ComplexSignal out{std::vector<cplx>(d + cfg.pulse_samples()), cfg.sample_rate};
  if (b.is_special()) return out;
  if (b.freqs().size() != cfg.subpulses) throw std::invalid_argument("synth_jam: action length != M");
  std::vector<cplx> seg(spp);
  for (std::size_t m = 0; m < cfg.subpulses; ++m) {
    // Band-limited noise envelope b(t): white draw, brick-wall to jam_bandwidth, rescaled.
    for (auto& z : seg) z = rng.complex_normal(1.0);
    fft_inplace(seg, false);
    const std::size_t kept = brick_wall(seg, cfg.sample_rate, 0.0, cfg.jam_bandwidth);
    fft_inplace(seg, true);
    const double scale = std::sqrt(cfg.jam_power * static_cast<double>(spp) / static_cast<double>(kept));
    const double fo = cfg.grid.offset(b.freqs()[m]);
    for (std::size_t i = 0; i < spp; ++i) {
      const std::size_t n = m * spp + i;
      const double t = static_cast<double>(n) / cfg.sample_rate;
      out.samples[d + n] = scale * seg[i] * std::polar(1.0, 2.0 * std::numbers::pi * fo * t);
    }
  }
  return out;
}

ComplexSignal combine_rx(const ComplexSignal& s, const ComplexSignal& j, const WaveformConfig& cfg, Rng& rng) {
  if (s.sample_rate != cfg.sample_rate || j.sample_rate != cfg.sample_rate) {
    throw std::invalid_argument("combine_rx: sample rate mismatch");
  }
  const std::size_t d = cfg.delay_samples();
  const std::size_t len = cfg.buffer_samples();
  if (2 * d + s.samples.size() > len || d + j.samples.size() > len) {
    throw std::invalid_argument("combine_rx: signal longer than the receive buffer");
  }
  ComplexSignal r{std::vector<cplx>(len), cfg.sample_rate};
  for (auto& z : r.samples) z = rng.complex_normal(cfg.noise_power);
  for (std::size_t i = 0; i < s.samples.size(); ++i) r.samples[2 * d + i] += cfg.attenuation * s.samples[i];
  for (std::size_t i = 0; i < j.samples.size(); ++i) r.samples[d + i] += j.samples[i];
  return r;
}

// ---------------------------------------------------------------------------
// Post-processing

ScenarioParams PostProcessResult::theta_hat(double sinr_cap) const {
  double pj = 0.0;
  std::size_t n = 0;
  for (std::size_t m = 0; m < jam_freqs.size(); ++m) {
    if (jam_freqs[m]) {
      pj += p_jam_hat[m];
      ++n;
    }
  }
  ScenarioParams t;
  t.p_radar = p_radar_hat;
  t.p_jam = n ? pj / static_cast<double>(n) : 0.0;
  t.p_noise = p_noise_hat;
  t.sinr_cap = sinr_cap;
  return t;
}

std::vector<std::size_t> PostProcessResult::jammed_subpulses(const RadarAction& a) const {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < jam_freqs.size() && m < a.freqs.size(); ++m) {
    if (jam_freqs[m] && *jam_freqs[m] == a.freqs[m]) out.push_back(m);
  }
  return out;
}

PostProcessResult post_process(const ComplexSignal& r, const RadarAction& a, const WaveformConfig& cfg) {
  cfg.validate();
  if (a.freqs.size() != cfg.subpulses) throw std::invalid_argument("post_process: action length != M");
  const std::size_t spp = cfg.samples_per_subpulse();
  const std::size_t plen = cfg.pulse_samples();
  if (r.samples.size() < plen) throw std::runtime_error("post_process: buffer shorter than one pulse");
  const double fs = cfg.sample_rate;
  const double bw = cfg.band_width();
  const std::size_t L = cfg.grid.size();

  // Pulse search. For every band the pulse uses: bandpass the buffer,
  // correlate with that band's subpulse template and keep the in-band power
  // over a subpulse-long window. A coarse peak of the plain correlation sum is
  // refined with the subpulses weighted by the inverse of their noise level
  // at the coarse position, so a jammed subpulse counts for little.
  const std::size_t n = r.samples.size();
  const std::size_t nfft = std::bit_ceil(n + spp);
  std::vector<cplx> rx(nfft);
  std::copy(r.samples.begin(), r.samples.end(), rx.begin());
  fft_inplace(rx, false);
  double mean_pow = 0.0;
  for (const auto& s : r.samples) mean_pow += std::norm(s);
  mean_pow /= static_cast<double>(n);
  const double v_floor = 1e-12 * mean_pow + 1e-300;

  std::vector<std::vector<cplx>> corr(L);
  std::vector<std::vector<double>> wpow(L);
  for (FreqIndex f : a.freqs) {
    const auto l = static_cast<std::size_t>(f);
    if (!corr[l].empty()) continue;
    std::vector<cplx> band = rx;
    brick_wall(band, fs, cfg.grid.offset(f), bw);
    std::vector<cplx> tx(nfft);
    const std::vector<cplx> sub = subpulse_template(cfg, f);
    std::copy(sub.begin(), sub.end(), tx.begin());
    fft_inplace(tx, false);
    std::vector<cplx> c(nfft);
    for (std::size_t k = 0; k < nfft; ++k) c[k] = band[k] * std::conj(tx[k]);
    fft_inplace(band, true);
    fft_inplace(c, true);
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t t = 0; t < n; ++t) prefix[t + 1] = prefix[t] + std::norm(band[t]);
    wpow[l].assign(n - spp + 1, 0.0);
    for (std::size_t t = 0; t + spp <= n; ++t) wpow[l][t] = (prefix[t + spp] - prefix[t]) / static_cast<double>(spp);
    c.resize(n);
    corr[l] = std::move(c);
  }
  const std::size_t max_lag = n - plen;
  auto score = [&](std::size_t lag, const std::vector<double>& w) {
    cplx num = 0.0;
    for (std::size_t m = 0; m < cfg.subpulses; ++m) num += w[m] * corr[static_cast<std::size_t>(a.freqs[m])][lag + m * spp];
    return std::norm(num);
  };
  const std::vector<double> flat(cfg.subpulses, 1.0);
  std::vector<double> mag(max_lag + 1);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) mag[lag] = score(lag, flat);
  std::size_t start = static_cast<std::size_t>(std::max_element(mag.begin(), mag.end()) - mag.begin());
  // Noise reference from lags at least a pulse length away from the peak.
  std::vector<double> sorted;
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    if (lag + plen <= start || lag >= start + plen) sorted.push_back(mag[lag]);
  }
  if (sorted.size() < 16) sorted = mag;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
  const double median = sorted[sorted.size() / 2];
  if (!(mag[start] > cfg.pulse_detect_ratio * median)) {
    throw std::runtime_error("post_process: pulse not found (matched-filter peak below detection threshold)");
  }
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<double> w(cfg.subpulses);
    for (std::size_t m = 0; m < cfg.subpulses; ++m) {
      w[m] = 1.0 / std::max(wpow[static_cast<std::size_t>(a.freqs[m])][start + m * spp], v_floor);
    }
    const std::size_t lo = start > spp / 2 ? start - spp / 2 : 0;
    const std::size_t hi = std::min(max_lag, start + spp / 2);
    std::size_t best = start;
    double best_score = score(start, w);
    for (std::size_t lag = lo; lag <= hi; ++lag) {
      const double v = score(lag, w);
      if (v > best_score) {
        best_score = v;
        best = lag;
      }
    }
    start = best;
  }

  PostProcessResult out;
  out.pulse_start = start;
  out.p_jam_hat.assign(cfg.subpulses, 0.0);
  out.jam_freqs.assign(cfg.subpulses, std::nullopt);
  out.sinr_per_subpulse.assign(cfg.subpulses, 0.0);

  // Per-subpulse spectra; noise floor from bins outside every grid band.
  const double K = static_cast<double>(spp);
  std::vector<std::vector<cplx>> spectra(cfg.subpulses);
  std::vector<double> free_bins;
  for (std::size_t m = 0; m < cfg.subpulses; ++m) {
    auto& seg = spectra[m];
    seg.assign(r.samples.begin() + static_cast<std::ptrdiff_t>(start + m * spp),
               r.samples.begin() + static_cast<std::ptrdiff_t>(start + (m + 1) * spp));
    fft_inplace(seg, false);
    for (std::size_t k = 0; k < spp; ++k) {
      double f = bin_freq(k, spp, fs);
      bool occupied = false;
      for (std::size_t l = 0; l < L; ++l) occupied = occupied || in_band(f, cfg.grid.offset(static_cast<FreqIndex>(l)), bw);
      if (!occupied) free_bins.push_back(std::norm(seg[k]));
    }
  }
  if (free_bins.empty()) throw std::runtime_error("post_process: no unoccupied bins for the noise floor");
  std::nth_element(free_bins.begin(), free_bins.begin() + static_cast<std::ptrdiff_t>(free_bins.size() / 2),
                   free_bins.end());
  // Exponential periodogram bins: median = ln 2 * mean; mean = K * full-band per-sample power.
  const double sigma2_full = free_bins[free_bins.size() / 2] / (std::numbers::ln2 * K);

  std::vector<double> pr(cfg.subpulses), p_int(cfg.subpulses);
  std::vector<std::size_t> own_bins(cfg.subpulses);
  for (std::size_t m = 0; m < cfg.subpulses; ++m) {
    const FreqIndex fr = a.freqs[m];
    const double center = cfg.grid.offset(fr);
    std::vector<cplx> s_bp = subpulse_template(cfg, fr);
    fft_inplace(s_bp, false);
    const std::size_t nb = brick_wall(s_bp, fs, center, bw);
    std::vector<cplx> r_bp = spectra[m];
    brick_wall(r_bp, fs, center, bw);
    own_bins[m] = nb;
    // Matched filter at zero lag, in the frequency domain: y = (1/K) sum R_bp S_bp*.
    cplx y = 0.0;
    double e_s = 0.0;
    for (std::size_t k = 0; k < spp; ++k) {
      y += r_bp[k] * std::conj(s_bp[k]);
      e_s += std::norm(s_bp[k]);
    }
    y /= K;
    e_s /= K;
    // Residual in-band power with the radar projection removed.
    double resid = 0.0;
    const cplx coef = y / e_s;
    for (std::size_t k = 0; k < spp; ++k) resid += std::norm(r_bp[k] - coef * s_bp[k]);
    resid /= K * K;
    const double dof = static_cast<double>(nb);
    const double p_i = dof > 1 ? resid * dof / (dof - 1.0) : resid;
    // E|y|^2 = |alpha|^2 e_s^2 + sigma^2_equiv e_s with sigma^2_equiv = p_i K / nb.
    const double bias = p_i * K / dof * e_s;
    const double amp2 = std::max(std::norm(y) - bias, 0.0) / (e_s * e_s);
    pr[m] = amp2 * cfg.amplitude * cfg.amplitude;
    p_int[m] = p_i;
  }
  // Same target every subpulse: pool the radar power estimate, weighting each
  // subpulse by the inverse of its interference level.
  double pr_sum = 0.0, w_sum = 0.0;
  for (std::size_t m = 0; m < cfg.subpulses; ++m) {
    const double w = 1.0 / std::max(p_int[m], 1e-30);
    pr_sum += w * pr[m];
    w_sum += w;
  }
  out.p_radar_hat = std::max(pr_sum / w_sum, 1e-30);

  for (std::size_t m = 0; m < cfg.subpulses; ++m) {
    const FreqIndex fr = a.freqs[m];
    const double p0_band = sigma2_full * static_cast<double>(own_bins[m]) / K;
    double best_excess = 0.0;
    std::optional<FreqIndex> best;
    for (std::size_t l = 0; l < L; ++l) {
      const auto f = static_cast<FreqIndex>(l);
      if (!cfg.full_spectrum_monitor && f != fr) continue;
      double excess;
      if (f == fr) {
        excess = p_int[m] - p0_band;
      } else {
        double p = 0.0;
        std::size_t nb = 0;
        for (std::size_t k = 0; k < spp; ++k) {
          if (in_band(bin_freq(k, spp, fs), cfg.grid.offset(f), bw)) {
            p += std::norm(spectra[m][k]);
            ++nb;
          }
        }
        excess = p / (K * K) - sigma2_full * static_cast<double>(nb) / K;
      }
      if (excess > cfg.jam_detect_ratio * p0_band && excess > best_excess) {
        best_excess = excess;
        best = f;
      }
    }
    out.jam_freqs[m] = best;
    if (best) out.p_jam_hat[m] = best_excess;
    const bool jammed = best && *best == fr;
    const double denom = jammed ? p_int[m] : p0_band;
    out.sinr_per_subpulse[m] = out.p_radar_hat / std::max(denom, 1e-30);
  }
  double p0 = 0.0;
  for (std::size_t m = 0; m < cfg.subpulses; ++m) p0 += sigma2_full * static_cast<double>(own_bins[m]) / K;
  out.p_noise_hat = p0 / static_cast<double>(cfg.subpulses);
  return out;
}

JammerAction extract_jammer_action(const PostProcessResult& p, const RadarAction& a, const ActionSpace& space,
                                   std::optional<std::size_t> no_jam_sentinel) {
  if (p.jam_freqs.size() != space.subpulses() || a.freqs.size() != space.subpulses()) {
    throw std::invalid_argument("extract_jammer_action: subpulse count mismatch");
  }
  bool any = false;
  for (const auto& f : p.jam_freqs) any = any || f.has_value();
  if (!any) {
    if (auto obs = space.special_index(SpecialAction::Observe)) return space.jammer_action(*obs);
    if (no_jam_sentinel) {
      if (*no_jam_sentinel >= space.jammer_count()) throw std::out_of_range("extract_jammer_action: bad sentinel");
      return space.jammer_action(*no_jam_sentinel);
    }
  }
  FreqTuple t(space.subpulses());
  for (std::size_t m = 0; m < t.size(); ++m) {
    if (p.jam_freqs[m]) {
      t[m] = *p.jam_freqs[m];
    } else {
      // Clear subpulse: any band other than the radar's leaves it unjammed.
      t[m] = a.freqs[m] == 0 ? 1 : 0;
    }
  }
  return JammerAction(std::move(t));
}

// ---------------------------------------------------------------------------
// Dumps

void write_iq(const std::string& path, const ComplexSignal& sig, const WaveformConfig& cfg) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  std::ostringstream hdr;
  hdr.precision(17);
  hdr << "fs=" << sig.sample_rate << " M=" << cfg.subpulses << " Tc=" << cfg.subpulse_duration
      << " samples=" << sig.samples.size() << '\n';
  f << hdr.str();
  auto put = [&f](float v) {
    std::uint32_t u = std::bit_cast<std::uint32_t>(v);
    u = to_little_endian(u);
    f.write(reinterpret_cast<const char*>(&u), 4);
  };
  for (const auto& z : sig.samples) {
    put(static_cast<float>(z.real()));
    put(static_cast<float>(z.imag()));
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

ComplexSignal read_iq(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::string line;
  std::getline(f, line);
  ComplexSignal sig;
  std::size_t count = 0;
  std::istringstream hs(line);
  for (std::string tok; hs >> tok;) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    auto key = tok.substr(0, eq);
    auto val = tok.substr(eq + 1);
    if (key == "fs") sig.sample_rate = std::stod(val);
    if (key == "samples") count = std::stoull(val);
  }
  if (sig.sample_rate <= 0) throw std::runtime_error(path + ": missing fs in header");
  sig.samples.resize(count);
  auto get = [&f]() {
    std::uint32_t u = 0;
    f.read(reinterpret_cast<char*>(&u), 4);
    u = to_little_endian(u);
    return std::bit_cast<float>(u);
  };
  for (auto& z : sig.samples) {
    float re = get();
    float im = get();
    z = {re, im};
  }
  if (!f) throw std::runtime_error(path + ": truncated sample data");
  return sig;
}

void write_spectrogram_csv(const std::string& path, const ComplexSignal& sig, std::size_t frame) {
  if (frame < 2) throw std::invalid_argument("spectrogram: frame must be >= 2 samples");
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  // Bins ordered from -fs/2 to fs/2.
  std::vector<std::size_t> order(frame);
  for (std::size_t i = 0; i < frame; ++i) order[i] = (i + (frame + 1) / 2) % frame;
  f << "time_s";
  for (std::size_t k : order) f << ',' << bin_freq(k, frame, sig.sample_rate);
  f << '\n';
  std::vector<cplx> buf(frame);
  for (std::size_t s = 0; s + frame <= sig.samples.size(); s += frame) {
    std::copy_n(sig.samples.begin() + static_cast<std::ptrdiff_t>(s), frame, buf.begin());
    fft_inplace(buf, false);
    f << static_cast<double>(s) / sig.sample_rate;
    for (std::size_t k : order) f << ',' << 10.0 * std::log10(std::norm(buf[k]) + 1e-30);
    f << '\n';
  }
}

}  // namespace antijam
