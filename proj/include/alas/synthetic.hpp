#pragma once

#include <cstdint>
#include <vector>

#include "alas/types.hpp"

namespace alas::synthetic {

struct Formant {
  double freq_hz;
  double bandwidth_hz;
};

/// A sustained vowel: band-limited harmonic pulse train with a linear F0
/// glide plus slow vibrato, filtered by a cascade of two-pole resonators.
struct VowelSpec {
  double duration_s = 1.0;
  double f0_start_hz = 150.0;
  double f0_end_hz = 150.0;
  double vibrato_hz = 0.0;
  double vibrato_depth_hz = 0.0;
  std::vector<Formant> formants = {{700, 80}, {1220, 90}, {2600, 120}, {3500, 200}};
  double peak = 0.5;
};

struct Utterance {
  Waveform wave;
  /// Instantaneous F0 at every sample.
  std::vector<double> f0;
};

Utterance vowel(const VowelSpec& spec, int sample_rate = 16000);

/// Pure sine of the given frequency and amplitude.
Waveform sine(double freq_hz, double amplitude, std::size_t num_samples, int sample_rate = 16000);

/// Gaussian white noise (Box-Muller over a 64-bit Mersenne Twister).
Waveform white_noise(double stddev, std::size_t num_samples, std::uint64_t seed,
                     int sample_rate = 16000);

/// `count` 1 s vowels with F0 endpoints drawn from [100, 300] Hz and one of
/// five formant sets, all determined by `seed`.
std::vector<Utterance> vowel_corpus(int count, std::uint64_t seed, int sample_rate = 16000);

}  // namespace alas::synthetic
