#include "alas/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "alas/error.hpp"
#include "alas/fft.hpp"

namespace alas {

std::size_t num_frames(std::size_t num_samples, const AnalysisParams& params) {
  const auto shift = static_cast<std::size_t>(params.frame_shift);
  return (num_samples + shift - 1) / shift;
}

Matrix frame_signal(const Waveform& wave, const AnalysisParams& params) {
  params.validate();
  if (wave.samples.empty()) throw Error("empty input");
  const std::size_t n_frames = num_frames(wave.samples.size(), params);
  const auto len = static_cast<std::size_t>(params.frame_len);
  Matrix frames(n_frames, len);
  for (std::size_t n = 0; n < n_frames; ++n) {
    const std::size_t start = n * static_cast<std::size_t>(params.frame_shift);
    const std::size_t avail = std::min(len, wave.samples.size() - start);
    std::copy_n(wave.samples.begin() + static_cast<std::ptrdiff_t>(start), avail,
                frames.row(n).begin());
  }
  return frames;
}

std::vector<double> hann_window(int length) {
  if (length < 2) throw Error("hann window length must be >= 2, got " + std::to_string(length));
  std::vector<double> w(static_cast<std::size_t>(length));
  for (int j = 0; j < length; ++j)
    w[static_cast<std::size_t>(j)] =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * j / length);
  return w;
}

LasMatrix extract_las(const Waveform& wave, const AnalysisParams& params) {
  const Matrix frames = frame_signal(wave, params);
  const std::vector<double> window = hann_window(params.frame_len);
  const int n_frames = static_cast<int>(frames.rows());
  const int n_bins = params.num_bins();
  const double log_floor = std::log(params.log_floor);
  LasMatrix las(frames.rows(), static_cast<std::size_t>(n_bins));

#pragma omp parallel
  {
    RealFft fft(params.fft_size);
#pragma omp for schedule(static)
    for (int n = 0; n < n_frames; ++n) {
      auto buf = fft.time();
      std::fill(buf.begin(), buf.end(), 0.0);
      const auto frame = frames.row(static_cast<std::size_t>(n));
      for (std::size_t j = 0; j < frame.size(); ++j) buf[j] = frame[j] * window[j];
      fft.forward();
      auto out = las.row(static_cast<std::size_t>(n));
      const auto spec = fft.freq();
      for (int k = 0; k < n_bins; ++k) {
        const double mag = std::abs(spec[static_cast<std::size_t>(k)]);
        out[static_cast<std::size_t>(k)] =
            mag > params.log_floor ? std::log(mag) : log_floor;
      }
    }
  }
  return las;
}

std::vector<double> mirror_full_spectrum(std::span<const double> half, int fft_size) {
  if (fft_size < 2 || half.size() != static_cast<std::size_t>(fft_size / 2 + 1))
    throw Error("mirror_full_spectrum: expected " + std::to_string(fft_size / 2 + 1) +
                " bins for fft size " + std::to_string(fft_size) + ", got " +
                std::to_string(half.size()));
  const auto fn = static_cast<std::size_t>(fft_size);
  std::vector<double> full(fn);
  std::copy(half.begin(), half.end(), full.begin());
  for (std::size_t k = 1; k + 1 < half.size(); ++k) full[fn - k] = half[k];
  return full;
}

GriffinLimResult griffin_lim(const LasMatrix& las, const AnalysisParams& params, int iters) {
  params.validate();
  if (iters < 1) throw Error("griffin_lim: iters must be >= 1");
  if (las.empty()) throw Error("griffin_lim: empty LAS matrix");
  if (las.cols() != static_cast<std::size_t>(params.num_bins()))
    throw Error("griffin_lim: LAS has " + std::to_string(las.cols()) + " bins, expected " +
                std::to_string(params.num_bins()));

  const int n_frames = static_cast<int>(las.rows());
  const auto n_bins = las.cols();
  const auto len = static_cast<std::size_t>(params.frame_len);
  const auto shift = static_cast<std::size_t>(params.frame_shift);
  const std::size_t out_len = (las.rows() - 1) * shift + len;
  const std::vector<double> window = hann_window(params.frame_len);
  const double inv_fn = 1.0 / params.fft_size;

  Matrix target(las.rows(), n_bins);
  for (std::size_t i = 0; i < las.data().size(); ++i) target.data()[i] = std::exp(las.data()[i]);
  // Energy of the full (mirrored) target spectrum; interior bins count twice.
  double target_energy = 0.0;
  for (std::size_t n = 0; n < las.rows(); ++n) {
    const auto tgt = target.row(n);
    for (std::size_t k = 0; k < n_bins; ++k)
      target_energy += (k == 0 || k + 1 == n_bins ? 1.0 : 2.0) * tgt[k] * tgt[k];
  }

  std::vector<double> weight(out_len, 0.0);
  for (std::size_t n = 0; n < las.rows(); ++n)
    for (std::size_t j = 0; j < len; ++j) weight[n * shift + j] += window[j] * window[j];

  // Current complex estimate, zero initial phase.
  std::vector<std::complex<double>> spec(target.data().begin(), target.data().end());
  Matrix frames(las.rows(), len);
  std::vector<double> frame_err(las.rows());
  std::vector<double> signal(out_len);

  GriffinLimResult result;
  result.inconsistency.reserve(static_cast<std::size_t>(iters));

  for (int it = 0; it < iters; ++it) {
    // Least-squares inverse STFT.
#pragma omp parallel
    {
      RealFft fft(params.fft_size);
#pragma omp for schedule(static)
      for (int n = 0; n < n_frames; ++n) {
        const auto row = static_cast<std::size_t>(n);
        std::copy_n(spec.begin() + static_cast<std::ptrdiff_t>(row * n_bins), n_bins,
                    fft.freq().begin());
        fft.inverse();
        auto out = frames.row(row);
        for (std::size_t j = 0; j < len; ++j) out[j] = fft.time()[j] * inv_fn * window[j];
      }
    }
    std::fill(signal.begin(), signal.end(), 0.0);
    for (std::size_t n = 0; n < las.rows(); ++n) {
      const auto row = frames.row(n);
      for (std::size_t j = 0; j < len; ++j) signal[n * shift + j] += row[j];
    }
    for (std::size_t t = 0; t < out_len; ++t)
      signal[t] = weight[t] > 1e-12 ? signal[t] / weight[t] : 0.0;

    // Re-analysis and phase update.
#pragma omp parallel
    {
      RealFft fft(params.fft_size);
#pragma omp for schedule(static)
      for (int n = 0; n < n_frames; ++n) {
        const auto row = static_cast<std::size_t>(n);
        auto buf = fft.time();
        std::fill(buf.begin(), buf.end(), 0.0);
        for (std::size_t j = 0; j < len; ++j) buf[j] = signal[row * shift + j] * window[j];
        fft.forward();
        double err = 0.0;
        const auto tgt = target.row(row);
        for (std::size_t k = 0; k < n_bins; ++k) {
          const std::complex<double> x = fft.freq()[k];
          const double mag = std::abs(x);
          const double d = mag - tgt[k];
          // Interior bins stand for two bins of the full spectrum.
          err += (k == 0 || k + 1 == n_bins ? 1.0 : 2.0) * d * d;
          spec[row * n_bins + k] = mag > 0.0 ? x * (tgt[k] / mag) : std::complex<double>(tgt[k]);
        }
        frame_err[row] = err;
      }
    }
    double err = 0.0;
    for (double e : frame_err) err += e;
    result.inconsistency.push_back(target_energy > 0.0 ? std::sqrt(err / target_energy) : 0.0);
  }

  double peak = 0.0;
  for (double s : signal) peak = std::max(peak, std::abs(s));
  result.raw_peak = peak;
  if (peak > 1.0)
    for (double& s : signal) s /= peak;
  result.wave.samples = std::move(signal);
  result.wave.sample_rate = params.sample_rate;
  return result;
}

}  // namespace alas
