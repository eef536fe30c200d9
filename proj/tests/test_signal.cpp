#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"

#include "antijam/signal.hpp"

using namespace antijam;

namespace {

// Short range keeps the receive buffer small; timing inside a pulse is unchanged.
WaveformConfig short_range() {
  WaveformConfig w;
  w.range_m = 3e3;
  return w;
}

double db(double v) { return 10 * std::log10(v); }

double analytic_sinr_db(const WaveformConfig& w, FreqIndex fr, std::optional<FreqIndex> fj) {
  return db(sinr(fr, fj, w.analytic_theta(1e300)));
}

PostProcessResult frame(const WaveformConfig& w, const RadarAction& a, const JammerAction& b, std::uint64_t seed) {
  Rng rng = Rng::substream(seed, 0, StreamPurpose::Channel);
  auto s = synth_radar(a, w);
  auto j = synth_jam(b, w, rng);
  return post_process(combine_rx(s, j, w, rng), a, w);
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("antijam_" + name)).string();
}

}  // namespace

TEST_CASE("config validation") {
  WaveformConfig w;
  CHECK_NOTHROW(w.validate());
  CHECK(w.samples_per_subpulse() == 300);
  CHECK(w.pulse_samples() == 1200);
  CHECK(w.delay_samples() == 33356);
  WaveformConfig slow = w;
  slow.sample_rate = 40e6;
  CHECK_THROWS(slow.validate());
  WaveformConfig odd = w;
  odd.subpulse_duration = 3.0005e-6;
  CHECK_THROWS(odd.validate());
  WaveformConfig wide = w;
  wide.jam_bandwidth = 9e6;
  CHECK_THROWS(wide.validate());

  ScenarioParams t = w.analytic_theta(2.0);
  CHECK(t.p_radar == doctest::Approx(1.0));
  CHECK(t.p_jam == doctest::Approx(10.0));
  CHECK(t.p_noise == doctest::Approx(1.25 * 8e6 / 100e6));
}

TEST_CASE("radar synthesis") {
  WaveformConfig w;
  RadarAction a{{0, 1, 1, 2}};
  auto s = synth_radar(a, w);
  CHECK(s.samples.size() == 1200);
  for (const auto& z : s.samples) CHECK(std::abs(z) == doctest::Approx(w.amplitude));

  // Single subpulse: the magnitude spectrum peaks within one bin of its offset.
  WaveformConfig one = w;
  one.subpulses = 1;
  auto t = synth_radar(RadarAction{{0}}, one);
  auto spec = t.samples;
  fft_inplace(spec, false);
  std::size_t peak = 0;
  for (std::size_t k = 0; k < spec.size(); ++k)
    if (std::abs(spec[k]) > std::abs(spec[peak])) peak = k;
  const double bin = w.sample_rate / static_cast<double>(spec.size());
  double f = peak * bin;
  if (f >= w.sample_rate / 2) f -= w.sample_rate;
  CHECK(std::abs(f - 6e6) <= bin);
  CHECK_THROWS(synth_radar(RadarAction{{0, 1}}, w));
}

TEST_CASE("jam synthesis") {
  WaveformConfig w = short_range();
  Rng rng(3);
  auto quiet = synth_jam(JammerAction(SpecialAction::Observe), w, rng);
  for (const auto& z : quiet.samples) CHECK(z == cplx(0.0));

  // >= 10^4 samples of noise envelope: empirical power within 5%.
  const std::size_t d = w.delay_samples();
  double p = 0.0;
  std::size_t n = 0;
  for (int rep = 0; rep < 10; ++rep) {
    auto j = synth_jam(JammerAction(FreqTuple{0, 1, 2, 0}), w, rng);
    for (std::size_t i = 0; i < d; ++i) CHECK(j.samples[i] == cplx(0.0));
    for (std::size_t i = d; i < d + w.pulse_samples(); ++i) {
      p += std::norm(j.samples[i]);
      ++n;
    }
  }
  CHECK(n >= 10000);
  CHECK(p / n == doctest::Approx(w.jam_power).epsilon(0.05));
}

TEST_CASE("channel") {
  WaveformConfig w = short_range();
  w.noise_power = 0.0;
  RadarAction a{{2, 0, 1, 1}};
  Rng rng(4);
  auto s = synth_radar(a, w);
  auto none = synth_jam(JammerAction(SpecialAction::Observe), w, rng);
  auto r = combine_rx(s, none, w, rng);
  const std::size_t d = w.delay_samples();
  CHECK(r.samples.size() == w.buffer_samples());
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    cplx want = (i >= 2 * d && i < 2 * d + s.samples.size()) ? s.samples[i - 2 * d] : cplx(0.0);
    CHECK(std::abs(r.samples[i] - want) < 1e-15);
  }

  WaveformConfig blank = w;
  blank.attenuation = 0.0;
  auto j = synth_jam(JammerAction(FreqTuple{0, 0, 1, 1}), blank, rng);
  auto rj = combine_rx(s, j, blank, rng);
  for (std::size_t i = 0; i < j.samples.size(); ++i) CHECK(rj.samples[d + i] == j.samples[i]);

  // Superposition with the noise held fixed by the seed.
  WaveformConfig noisy = short_range();
  auto s2 = synth_radar(RadarAction{{1, 1, 0, 2}}, noisy);
  ComplexSignal sum = s;
  for (std::size_t i = 0; i < sum.samples.size(); ++i) sum.samples[i] += s2.samples[i];
  Rng r1(9), r2(9);
  auto lhs = combine_rx(sum, j, noisy, r1);
  auto rhs = combine_rx(s, j, noisy, r2);
  for (std::size_t i = 0; i < s2.samples.size(); ++i) rhs.samples[2 * d + i] += noisy.attenuation * s2.samples[i];
  for (std::size_t i = 0; i < lhs.samples.size(); ++i) CHECK(std::abs(lhs.samples[i] - rhs.samples[i]) < 1e-12);
}

TEST_CASE("two-collision frame is detected on subpulses one and three") {
  WaveformConfig w;
  RadarAction a{{0, 1, 1, 2}};
  JammerAction b{FreqTuple{0, 0, 1, 1}};
  auto p = frame(w, a, b, 1);
  CHECK(p.jammed_subpulses(a) == std::vector<std::size_t>{0, 2});
  CHECK(p.pulse_start == 2 * w.delay_samples());
  for (std::size_t m = 0; m < 4; ++m) {
    CHECK(std::abs(db(p.sinr_per_subpulse[m]) - analytic_sinr_db(w, a.freqs[m], b.freq_at(m))) <= 1.5);
  }
}

TEST_CASE("high SNR without jamming matches the link value") {
  WaveformConfig w = short_range();
  w.amplitude = 3.0;
  RadarAction a{{0, 2, 1, 0}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto p = frame(w, a, JammerAction(SpecialAction::Observe), seed);
    for (std::size_t m = 0; m < 4; ++m) {
      CHECK(std::abs(db(p.sinr_per_subpulse[m]) - analytic_sinr_db(w, a.freqs[m], std::nullopt)) <= 1.0);
    }
    CHECK(extract_jammer_action(p, a, ActionSpace(3, 4, {SpecialAction::Observe})).is_special());
  }
}

TEST_CASE("full collision: estimator is unbiased within tolerance") {
  // Each frame's interference is a finite noise sample; compare the trial mean.
  WaveformConfig w = short_range();
  RadarAction a{{0, 1, 2, 0}};
  JammerAction b{a.freqs};
  const int trials = 300;
  std::vector<double> mean(4, 0.0);
  for (int t = 0; t < trials; ++t) {
    auto p = frame(w, a, b, static_cast<std::uint64_t>(t));
    for (std::size_t m = 0; m < 4; ++m) mean[m] += db(p.sinr_per_subpulse[m]) / trials;
  }
  for (std::size_t m = 0; m < 4; ++m) CHECK(std::abs(mean[m] - analytic_sinr_db(w, a.freqs[m], a.freqs[m])) <= 1.5);
}

TEST_CASE("jammer action extraction") {
  WaveformConfig w = short_range();
  w.jam_power = 10 * w.analytic_theta(1).p_noise;  // J/N = 10 dB in band
  ActionSpace space(3, 4, {SpecialAction::Observe});
  RadarAction a{{0, 1, 2, 0}};
  JammerAction b{a.freqs};
  int exact = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) exact += extract_jammer_action(frame(w, a, b, seed), a, space) == b;
  CHECK(exact >= 990);

  auto clear = frame(w, a, JammerAction(SpecialAction::Observe), 5);
  CHECK(extract_jammer_action(clear, a, space) == JammerAction(SpecialAction::Observe));
  ActionSpace bare(3, 4);
  JammerAction sentinel = extract_jammer_action(clear, a, bare, 0);
  CHECK(sentinel == bare.jammer_action(0));
  // No OBSERVE and no sentinel: a tuple that collides nowhere.
  JammerAction miss = extract_jammer_action(clear, a, bare);
  REQUIRE_FALSE(miss.is_special());
  for (std::size_t m = 0; m < 4; ++m) CHECK(miss.freqs()[m] != a.freqs[m]);

  // Partial jamming: the clear subpulses report a band other than the radar's.
  JammerAction part{FreqTuple{0, 0, 2, 1}};
  auto pp = frame(w, a, part, 6);
  JammerAction got = extract_jammer_action(pp, a, space);
  REQUIRE_FALSE(got.is_special());
  CHECK(got.freqs()[0] == 0);
  CHECK(got.freqs()[2] == 2);
  CHECK(got.freqs()[1] != a.freqs[1]);
  CHECK(got.freqs()[3] != a.freqs[3]);
}

TEST_CASE("property: detection is non-decreasing in J/N") {
  WaveformConfig base = short_range();
  const double p0 = base.analytic_theta(1).p_noise;
  ActionSpace space(3, 4, {SpecialAction::Observe});
  RadarAction a{{1, 0, 2, 2}};
  JammerAction b{a.freqs};
  std::vector<int> hits;
  for (double jn_db : {0.0, 5.0, 10.0}) {
    WaveformConfig w = base;
    w.jam_power = p0 * std::pow(10.0, jn_db / 10);
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) ok += extract_jammer_action(frame(w, a, b, seed), a, space) == b;
    hits.push_back(ok);
  }
  CHECK(hits[0] <= hits[1]);
  CHECK(hits[1] <= hits[2]);
}

TEST_CASE("property: in-band radar energy is preserved by the bandpass") {
  WaveformConfig w = short_range();
  for (FreqIndex f = 0; f < 3; ++f) {
    WaveformConfig one = w;
    one.subpulses = 1;
    auto s = synth_radar(RadarAction{{f}}, one);
    auto spec = s.samples;
    fft_inplace(spec, false);
    double total = 0.0, kept = 0.0;
    const double fs = w.sample_rate, center = w.grid.offset(f), bw = w.band_width();
    for (std::size_t k = 0; k < spec.size(); ++k) {
      double fk = k * fs / spec.size();
      if (fk >= fs / 2) fk -= fs;
      total += std::norm(spec[k]);
      if (fk >= center - bw / 2 && fk < center + bw / 2) kept += std::norm(spec[k]);
    }
    CHECK(kept / total >= 0.98);
  }
}

TEST_CASE("pulse search failure") {
  WaveformConfig w = short_range();
  ComplexSignal empty{std::vector<cplx>(w.buffer_samples()), w.sample_rate};
  CHECK_THROWS_AS(post_process(empty, RadarAction{{0, 0, 0, 0}}, w), std::runtime_error);
  ComplexSignal tiny{std::vector<cplx>(10), w.sample_rate};
  CHECK_THROWS(post_process(tiny, RadarAction{{0, 0, 0, 0}}, w));
}

TEST_CASE("theta estimate") {
  WaveformConfig w = short_range();
  RadarAction a{{0, 1, 1, 2}};
  double pr = 0.0, p0 = 0.0, pj = 0.0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    auto th = frame(w, a, JammerAction(FreqTuple{0, 0, 1, 1}), static_cast<std::uint64_t>(t)).theta_hat(2.0);
    pr += th.p_radar / trials;
    p0 += th.p_noise / trials;
    pj += th.p_jam / trials;
  }
  ScenarioParams truth = w.analytic_theta(2.0);
  CHECK(pr == doctest::Approx(truth.p_radar).epsilon(0.05));
  CHECK(p0 == doctest::Approx(truth.p_noise).epsilon(0.05));
  CHECK(pj == doctest::Approx(truth.p_jam).epsilon(0.15));
}

TEST_CASE("iq and spectrogram dumps") {
  WaveformConfig w = short_range();
  auto s = synth_radar(RadarAction{{0, 1, 2, 0}}, w);
  const std::string iq = temp_path("dump.iq");
  write_iq(iq, s, w);
  ComplexSignal back = read_iq(iq);
  CHECK(back.sample_rate == doctest::Approx(w.sample_rate));
  REQUIRE(back.samples.size() == s.samples.size());
  for (std::size_t i = 0; i < s.samples.size(); ++i) CHECK(std::abs(back.samples[i] - s.samples[i]) < 1e-6);
  std::ifstream raw(iq, std::ios::binary);
  std::string header;
  std::getline(raw, header);
  CHECK(header.rfind("fs=", 0) == 0);
  CHECK(header.find("samples=1200") != std::string::npos);
  std::filesystem::remove(iq);

  const std::string csv = temp_path("spec.csv");
  write_spectrogram_csv(csv, s, 100);
  std::ifstream in(csv);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 1 + 12);
  std::filesystem::remove(csv);
  CHECK_THROWS(read_iq(temp_path("missing.iq")));
}
