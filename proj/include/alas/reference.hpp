#pragma once

// Serial reference kernels. They follow the textbook definitions directly
// (naive DFT, explicit mirror / centre-shift / circular convolution) and
// exist to check the parallel FFT-based kernels and to benchmark them.

#include <vector>

#include "alas/params.hpp"
#include "alas/recovery.hpp"
#include "alas/types.hpp"

namespace alas::reference {

/// O(FN * L) direct DFT per frame, frames processed in order.
LasMatrix extract_las(const Waveform& wave, const AnalysisParams& params);

/// Mirrors S to length FN, moves zero frequency to index FN/2, convolves
/// circularly with the centred window spectrum in O(FN^2), shifts back and
/// takes log|.| of the first K bins.
std::vector<double> alas_from_spectrum(const SpectrumFrame& s, const WindowSpectrum& window,
                                       const AnalysisParams& params);

std::vector<double> recover_alas_frame(const AcousticFrame& frame, const WindowSpectrum& window,
                                       const AnalysisParams& params);

LasMatrix recover_alas(const FeatureTrack& track, const AnalysisParams& params);

/// Serial per-entry affine map and moving average.
LasMatrix apply_refiner(const std::vector<double>& gain, const std::vector<double>& bias,
                        int context_radius, const LasMatrix& alas);

}  // namespace alas::reference
