#pragma once

#include <span>
#include <vector>

#include "alas/fft.hpp"
#include "alas/params.hpp"
#include "alas/types.hpp"

namespace alas {

/// Harmonic spacing in bins: round-half-up(f0 / Fs * FN), at least 1.
int harmonic_spacing(double f0, const AnalysisParams& params);

/// Source spectrum E. Voiced (f0 > 0): unit pulses at bins i * K0 for
/// i = 1, 2, ... while i * K0 <= K - 1, zero elsewhere. Unvoiced (f0 == 0):
/// all ones, the flat expected magnitude of white noise.
SpectrumFrame excitation_spectrum(double f0, const AnalysisParams& params);

/// All-pass frequency warping of a cepstrum (the freqt recursion). Running it
/// with +alpha maps mel-cepstra to linear cepstra; -alpha goes back. Output
/// has the same length as the input, so content stretched past the end is
/// truncated.
///
/// With c_k(len + 1) = 0 and i running from len down to 1:
///   c_1(i) = m_i - alpha c_1(i+1)
///   c_2(i) = (1 - alpha^2) c_1(i+1) - alpha c_2(i+1)
///   c_k(i) = c_{k-1}(i+1) - alpha (c_k(i+1) - c_{k-1}(i)),  k > 2
/// and the result is c_k(1).
std::vector<double> warp_cepstrum(std::span<const double> m, double alpha);

/// Vocal-tract amplitude spectrum V = exp(FFT(mirror(warp(m, +alpha)))) over
/// the first K bins. `mcep_with_energy` is [energy, mcep_1 .. mcep_order].
SpectrumFrame filter_spectrum(std::span<const double> mcep_with_energy,
                              const AnalysisParams& params);

/// Element-wise product E .* V.
SpectrumFrame combine_source_filter(const SpectrumFrame& e, const SpectrumFrame& v);

/// Fourier transform of the zero-phase periodic Hann window, arranged with
/// zero frequency at index FN/2.
struct WindowSpectrum {
  std::vector<double> centered;
  int fft_size = 0;

  double at_offset(int bin_offset) const;
};

WindowSpectrum window_spectrum(const AnalysisParams& params);

/// Length-FN periodic Hann window circularly centred on sample 0.
std::vector<double> zero_phase_window(const AnalysisParams& params);

/// Per-thread workspace for ALAS recovery. Holds the zero-phase window and
/// FFT plans; one instance must not be shared between threads.
class AlasRecovery {
 public:
  explicit AlasRecovery(const AnalysisParams& params);

  /// ALAS = log(max(|S (*) W|, floor)) over the first K bins, with S the
  /// combined source-filter spectrum and (*) the length-FN circular
  /// convolution of the mirrored spectra.
  std::vector<double> frame(const AcousticFrame& frame);

  /// Same construction from an explicit source-filter spectrum S.
  std::vector<double> from_spectrum(const SpectrumFrame& s);

 private:
  AnalysisParams params_;
  std::vector<double> zero_phase_;
  RealFft fft_;
};

std::vector<double> recover_alas_frame(const AcousticFrame& frame, const AnalysisParams& params);

/// recover_alas_frame over a whole track, frames in parallel.
LasMatrix recover_alas(const FeatureTrack& track, const AnalysisParams& params);

/// [energy, mcep_1 .. mcep_order] of a frame.
std::vector<double> cepstrum_of(const AcousticFrame& frame);

}  // namespace alas
