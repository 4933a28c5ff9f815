#include "alas/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "alas/error.hpp"

namespace alas::synthetic {

namespace {

// Uniform [0, 1) from the raw engine output, independent of the standard
// library's distribution implementations.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Utterance vowel(const VowelSpec& spec, int sample_rate) {
  if (spec.duration_s <= 0.0 || sample_rate <= 0) throw Error("vowel: invalid duration or rate");
  const auto n = static_cast<std::size_t>(std::lround(spec.duration_s * sample_rate));
  const double fs = sample_rate;
  const double nyquist = fs / 2.0;
  constexpr double two_pi = 2.0 * std::numbers::pi;

  Utterance u;
  u.f0.resize(n);
  std::vector<double> source(n, 0.0);
  double phase = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double time = static_cast<double>(t) / fs;
    const double glide = spec.f0_start_hz + (spec.f0_end_hz - spec.f0_start_hz) * time / spec.duration_s;
    const double f0 = glide + spec.vibrato_depth_hz * std::sin(two_pi * spec.vibrato_hz * time);
    u.f0[t] = f0;
    // Harmonics fade out over 200 Hz below 0.95 Nyquist so none pops in or out.
    for (int h = 1; h * f0 < 0.95 * nyquist; ++h) {
      const double taper = std::clamp((0.95 * nyquist - h * f0) / 200.0, 0.0, 1.0);
      source[t] += taper * std::cos(h * phase);
    }
    phase = std::fmod(phase + two_pi * f0 / fs, two_pi);
  }

  std::vector<double> y = std::move(source);
  for (const Formant& f : spec.formants) {
    const double r = std::exp(-std::numbers::pi * f.bandwidth_hz / fs);
    const double a1 = -2.0 * r * std::cos(two_pi * f.freq_hz / fs);
    const double a2 = r * r;
    double y1 = 0.0;
    double y2 = 0.0;
    for (double& v : y) {
      const double out = v - a1 * y1 - a2 * y2;
      y2 = y1;
      y1 = out;
      v = out;
    }
  }

  double peak = 0.0;
  for (double v : y) peak = std::max(peak, std::abs(v));
  if (peak > 0.0)
    for (double& v : y) v *= spec.peak / peak;
  u.wave.samples = std::move(y);
  u.wave.sample_rate = sample_rate;
  return u;
}

Waveform sine(double freq_hz, double amplitude, std::size_t num_samples, int sample_rate) {
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.resize(num_samples);
  for (std::size_t t = 0; t < num_samples; ++t)
    w.samples[t] = amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(t) /
                                        sample_rate);
  return w;
}

Waveform white_noise(double stddev, std::size_t num_samples, std::uint64_t seed, int sample_rate) {
  std::mt19937_64 rng(seed);
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.resize(num_samples);
  for (double& s : w.samples) {
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    s = stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  return w;
}

std::vector<Utterance> vowel_corpus(int count, std::uint64_t seed, int sample_rate) {
  static const std::vector<std::vector<Formant>> kVowels = {
      {{730, 90}, {1090, 110}, {2440, 140}, {3400, 200}},  // a
      {{270, 60}, {2290, 100}, {3010, 150}, {3700, 200}},  // i
      {{300, 60}, {870, 90}, {2240, 130}, {3300, 200}},    // u
      {{530, 70}, {1840, 100}, {2480, 130}, {3500, 200}},  // e
      {{570, 80}, {840, 90}, {2410, 140}, {3400, 200}},    // o
  };
  std::mt19937_64 rng(seed);
  std::vector<Utterance> corpus;
  corpus.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    VowelSpec spec;
    // Endpoints stay 10 Hz inside [100, 300] to leave room for the vibrato.
    spec.f0_start_hz = 110.0 + 180.0 * uniform01(rng);
    spec.f0_end_hz = 110.0 + 180.0 * uniform01(rng);
    spec.vibrato_hz = 3.0 + 3.0 * uniform01(rng);
    spec.vibrato_depth_hz = 8.0 * uniform01(rng);
    spec.formants = kVowels[static_cast<std::size_t>(i) % kVowels.size()];
    spec.peak = 0.3 + 0.4 * uniform01(rng);
    corpus.push_back(vowel(spec, sample_rate));
  }
  return corpus;
}

}  // namespace alas::synthetic
