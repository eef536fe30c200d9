#pragma once

// Signal-level layer: subpulse frequency-hopping waveforms, narrowband noise
// jamming, the receive channel, and per-subpulse bandpass + matched-filter
// post-processing that recovers the jammer's frequencies and the SINR.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "antijam/game.hpp"
#include "antijam/rng.hpp"

namespace antijam {

using cplx = std::complex<double>;

enum class Envelope { Rect, Lfm };

struct WaveformConfig {
  double sample_rate = 100e6;
  double subpulse_duration = 3e-6;
  std::size_t subpulses = 4;
  FrequencyGrid grid{10e9, 6e6, 8e6, 3};
  Envelope envelope = Envelope::Rect;
  double lfm_bandwidth = 2e6;
  double amplitude = 1.0;
  double range_m = 100e3;
  cplx attenuation{1.0, 0.0};
  /// Per-sample power of the white receiver noise over the full sample band.
  double noise_power = 1.25;
  /// Per-sample power of the jammer's noise envelope b(t).
  double jam_power = 10.0;
  /// Occupied bandwidth of b(t); must not exceed the filter width.
  double jam_bandwidth = 8e6;
  /// Brick-wall bandpass width; defaults to the grid step when <= 0.
  double filter_width = 0.0;
  /// Jamming is declared when the in-band excess exceeds this multiple of the noise floor.
  double jam_detect_ratio = 3.0;
  /// Pulse is declared found when the matched-filter peak exceeds this multiple of the median.
  double pulse_detect_ratio = 20.0;
  /// Filter every grid band, not just the radar's own, when extracting jammer frequencies.
  bool full_spectrum_monitor = true;

  void validate() const;
  double band_width() const { return filter_width > 0.0 ? filter_width : grid.step(); }
  std::size_t samples_per_subpulse() const;
  std::size_t pulse_samples() const { return subpulses * samples_per_subpulse(); }
  /// One-way propagation delay T_d = R / c in samples.
  std::size_t delay_samples() const;
  /// Receive buffer length: echo and jamming both arrive after 2 T_d.
  std::size_t buffer_samples() const;
  /// theta seen after bandpass filtering: P_R = |alpha|^2 A^2, P_J, in-band P_0.
  ScenarioParams analytic_theta(double sinr_cap) const;
};

struct ComplexSignal {
  std::vector<cplx> samples;
  double sample_rate = 0.0;
};

struct PostProcessResult {
  std::size_t pulse_start = 0;
  /// Estimated powers in the same in-band convention as analytic_theta().
  double p_radar_hat = 0.0;
  double p_noise_hat = 0.0;
  std::vector<double> p_jam_hat;
  /// Detected jammer frequency per subpulse; nullopt when no band was jammed.
  std::vector<std::optional<FreqIndex>> jam_freqs;
  std::vector<double> sinr_per_subpulse;

  /// theta_hat with P_J averaged over the jammed subpulses.
  ScenarioParams theta_hat(double sinr_cap) const;
  /// 0-based subpulses whose detected jammer frequency equals the radar's.
  std::vector<std::size_t> jammed_subpulses(const RadarAction& a) const;
};

/// Sum_m rect((t - m T_c)/T_c) a(t) exp(j 2 pi f_m t), M T_c f_s samples long.
ComplexSignal synth_radar(const RadarAction& a, const WaveformConfig& cfg);
/// Jammer emission in its own time base: noise subpulses starting at T_d.
/// OBSERVE gives the all-zero signal.
ComplexSignal synth_jam(const JammerAction& b, const WaveformConfig& cfg, Rng& rng);
/// alpha s(t - 2 T_d) + j(t - T_d) + w(t) over buffer_samples().
ComplexSignal combine_rx(const ComplexSignal& s, const ComplexSignal& j, const WaveformConfig& cfg, Rng& rng);
/// Throws std::runtime_error when the pulse cannot be found.
PostProcessResult post_process(const ComplexSignal& r, const RadarAction& a, const WaveformConfig& cfg);

/// Assembles the detected frequencies into a jammer action. Clear subpulses
/// copy a band other than the radar's; an all-clear pulse maps to OBSERVE if
/// the action space has it, else to `no_jam_sentinel`.
JammerAction extract_jammer_action(const PostProcessResult& p, const RadarAction& a,
                                   const ActionSpace& space,
                                   std::optional<std::size_t> no_jam_sentinel = std::nullopt);

/// In-place FFT of arbitrary length (FFTW backend).
void fft_inplace(std::vector<cplx>& x, bool inverse);

/// Binary I/Q dump: an ASCII header line "fs=<Hz> M=<n> Tc=<s> samples=<n>\n"
/// followed by interleaved little-endian float32 I, Q.
void write_iq(const std::string& path, const ComplexSignal& sig, const WaveformConfig& cfg);
ComplexSignal read_iq(const std::string& path);
/// Spectrogram magnitude (dB) as CSV: one row per frame, first column the
/// frame start time (s), header row with bin frequencies (Hz).
void write_spectrogram_csv(const std::string& path, const ComplexSignal& sig, std::size_t frame);

}  // namespace antijam
