#pragma once

#include <span>
#include <vector>

#include "alas/params.hpp"
#include "alas/types.hpp"

namespace alas {

inline constexpr int kDefaultMcepOrder = 40;

/// F0 search range and voicing thresholds of the autocorrelation tracker.
struct PitchConfig {
  double min_f0 = 50.0;
  double max_f0 = 500.0;
  double voicing_threshold = 0.3;
  double min_rms = 1e-4;
};

struct PitchMark {
  double f0 = 0.0;
  bool voiced = false;
};

/// Normalized-autocorrelation pitch tracker, one estimate per STFT frame.
///
/// For the frame starting at n * frame_shift, the L-sample segment x is
/// correlated with the segment starting `lag` samples later,
///   r(lag) = <x, x_lag> / sqrt(<x, x> <x_lag, x_lag>),
/// for lag in [Fs / max_f0, Fs / min_f0]. The frame is voiced when the
/// peak r reaches the voicing threshold and the frame RMS reaches min_rms.
/// The chosen lag is the first local peak within 90% of the global peak
/// (guards against picking a multiple of the period), refined by a
/// parabolic fit.
std::vector<PitchMark> estimate_f0(const Waveform& wave, const AnalysisParams& params,
                                   const PitchConfig& config = {});

/// Mel-cepstral analysis of one log-amplitude frame: real cepstrum of the
/// mirrored log spectrum, warped with -alpha, truncated to order + 1
/// coefficients. Element 0 is the energy term.
std::vector<double> mcep_analysis(std::span<const double> las_frame, const AnalysisParams& params,
                                  int order = kDefaultMcepOrder);

/// F0, V/UV, energy and `order` mel-cepstra for every STFT frame of `wave`.
FeatureTrack extract_features(const Waveform& wave, const AnalysisParams& params,
                              int order = kDefaultMcepOrder);

/// Features from a precomputed LAS matrix (must come from extract_las on the
/// same waveform and parameters).
FeatureTrack extract_features(const Waveform& wave, const LasMatrix& las,
                              const AnalysisParams& params, int order = kDefaultMcepOrder);

}  // namespace alas
