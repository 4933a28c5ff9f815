#include "alas/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "alas/dsp.hpp"
#include "alas/error.hpp"

namespace alas::reference {

LasMatrix extract_las(const Waveform& wave, const AnalysisParams& params) {
  const Matrix frames = frame_signal(wave, params);
  const std::vector<double> window = hann_window(params.frame_len);
  const auto n_bins = static_cast<std::size_t>(params.num_bins());
  const auto fn = static_cast<std::size_t>(params.fft_size);
  const double log_floor = std::log(params.log_floor);

  // cos/sin table indexed by (j * k) mod FN
  std::vector<double> cos_table(fn);
  std::vector<double> sin_table(fn);
  for (std::size_t i = 0; i < fn; ++i) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(fn);
    cos_table[i] = std::cos(phase);
    sin_table[i] = std::sin(phase);
  }

  LasMatrix las(frames.rows(), n_bins);
  std::vector<double> x(frames.cols());
  for (std::size_t n = 0; n < frames.rows(); ++n) {
    const auto frame = frames.row(n);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = frame[j] * window[j];
    for (std::size_t k = 0; k < n_bins; ++k) {
      double re = 0.0;
      double im = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        const std::size_t idx = (j * k) % fn;
        re += x[j] * cos_table[idx];
        im -= x[j] * sin_table[idx];
      }
      const double mag = std::hypot(re, im);
      las(n, k) = mag > params.log_floor ? std::log(mag) : log_floor;
    }
  }
  return las;
}

std::vector<double> alas_from_spectrum(const SpectrumFrame& s, const WindowSpectrum& window,
                                       const AnalysisParams& params) {
  const int fn = params.fft_size;
  const int half = fn / 2;
  if (window.fft_size != fn || window.centered.size() != static_cast<std::size_t>(fn))
    throw Error("reference::alas_from_spectrum: window spectrum size mismatch");
  const std::vector<double> full = mirror_full_spectrum(s.bins, fn);

  std::vector<double> s_centered(static_cast<std::size_t>(fn));
  for (int i = 0; i < fn; ++i)
    s_centered[static_cast<std::size_t>(i)] = full[static_cast<std::size_t>((i + half) % fn)];

  std::vector<double> y_centered(static_cast<std::size_t>(fn), 0.0);
  for (int k = 0; k < fn; ++k) {
    double acc = 0.0;
    for (int j = 0; j < fn; ++j) {
      // Offset k - j in frequency lives at index k - j + FN/2 of the centred window.
      const int w_idx = ((k - j + half) % fn + fn) % fn;
      acc += s_centered[static_cast<std::size_t>(j)] * window.centered[static_cast<std::size_t>(w_idx)];
    }
    y_centered[static_cast<std::size_t>(k)] = acc;
  }

  const auto n_bins = static_cast<std::size_t>(params.num_bins());
  const double log_floor = std::log(params.log_floor);
  std::vector<double> out(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    const double mag = std::abs(y_centered[(k + static_cast<std::size_t>(half)) % static_cast<std::size_t>(fn)]);
    out[k] = mag > params.log_floor ? std::log(mag) : log_floor;
  }
  return out;
}

std::vector<double> recover_alas_frame(const AcousticFrame& frame, const WindowSpectrum& window,
                                       const AnalysisParams& params) {
  const SpectrumFrame e = excitation_spectrum(frame.voiced ? frame.f0 : 0.0, params);
  const SpectrumFrame v = filter_spectrum(cepstrum_of(frame), params);
  return alas_from_spectrum(combine_source_filter(e, v), window, params);
}

LasMatrix recover_alas(const FeatureTrack& track, const AnalysisParams& params) {
  if (track.frames.empty()) throw Error("recover_alas: empty feature track");
  const WindowSpectrum window = window_spectrum(params);
  LasMatrix out(track.frames.size(), static_cast<std::size_t>(params.num_bins()));
  for (std::size_t n = 0; n < track.frames.size(); ++n) {
    const auto row = recover_alas_frame(track.frames[n], window, params);
    std::copy(row.begin(), row.end(), out.row(n).begin());
  }
  return out;
}

LasMatrix apply_refiner(const std::vector<double>& gain, const std::vector<double>& bias,
                        int context_radius, const LasMatrix& alas) {
  if (gain.size() != alas.cols() || bias.size() != alas.cols())
    throw Error("reference::apply_refiner: bin count mismatch");
  const std::size_t n_frames = alas.rows();
  LasMatrix out(n_frames, alas.cols());
  for (std::size_t n = 0; n < n_frames; ++n) {
    const std::size_t lo = n >= static_cast<std::size_t>(context_radius) ? n - static_cast<std::size_t>(context_radius) : 0;
    const std::size_t hi = std::min(n_frames - 1, n + static_cast<std::size_t>(context_radius));
    for (std::size_t k = 0; k < alas.cols(); ++k) {
      double acc = 0.0;
      for (std::size_t m = lo; m <= hi; ++m) acc += gain[k] * alas(m, k) + bias[k];
      out(n, k) = acc / static_cast<double>(hi - lo + 1);
    }
  }
  return out;
}

}  // namespace alas::reference
