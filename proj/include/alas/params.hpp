#pragma once

#include <cstddef>

namespace alas {

/// STFT geometry and warping constant shared by every stage of the pipeline.
///
/// Defaults: 16 kHz audio, 20 ms frames (320 samples), 5 ms shift (80 samples),
/// 512-point FFT (257 bins) and a mel warping coefficient of 0.42.
struct AnalysisParams {
  int sample_rate = 16000;
  int frame_len = 320;
  int frame_shift = 80;
  int fft_size = 512;
  double warp_alpha = 0.42;
  double log_floor = 1e-10;

  int num_bins() const { return fft_size / 2 + 1; }

  /// Throws alas::Error naming the first violated constraint.
  void validate() const;
};

}  // namespace alas
