#pragma once

#include <span>
#include <vector>

#include "alas/params.hpp"
#include "alas/types.hpp"

namespace alas {

/// Splits `wave` into frames of frame_len samples starting at n * frame_shift,
/// n = 0 .. ceil(len / frame_shift) - 1. Samples past the end are zero.
Matrix frame_signal(const Waveform& wave, const AnalysisParams& params);

/// Number of frames frame_signal() produces for `num_samples` samples.
std::size_t num_frames(std::size_t num_samples, const AnalysisParams& params);

/// Periodic Hann window: w[j] = 0.5 - 0.5 cos(2 pi j / L).
std::vector<double> hann_window(int length);

/// log(max(|FFT(frame .* hann)|, floor)) over the first K bins of every frame.
/// Frames are processed in parallel; the result does not depend on the
/// thread count.
LasMatrix extract_las(const Waveform& wave, const AnalysisParams& params);

/// Rebuilds the full even-symmetric length-FN spectrum from its first
/// FN/2 + 1 bins.
std::vector<double> mirror_full_spectrum(std::span<const double> half, int fft_size);

struct GriffinLimResult {
  Waveform wave;
  /// Peak absolute amplitude before the output was scaled into [-1, 1].
  double raw_peak = 0.0;
  /// Spectral inconsistency || |STFT(x_i)| - A ||_F / ||A||_F after each
  /// iteration i (0 when A is all zero).
  std::vector<double> inconsistency;
};

inline constexpr int kDefaultGriffinLimIters = 60;

/// Griffin-Lim phase reconstruction of the magnitudes exp(las) with a
/// squared-window weighted overlap-add. Starts from zero phase. Output has
/// (N - 1) * frame_shift + frame_len samples and is scaled down to peak 1
/// only when it would exceed it.
GriffinLimResult griffin_lim(const LasMatrix& las, const AnalysisParams& params,
                             int iters = kDefaultGriffinLimIters);

}  // namespace alas
