#include "alas/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alas/dsp.hpp"
#include "alas/error.hpp"

namespace alas {

namespace {

// log V over the first K bins; `fft` must have size FN.
void log_filter_spectrum(std::span<const double> mcep_with_energy, const AnalysisParams& params,
                         RealFft& fft, std::span<double> out) {
  const auto n_bins = static_cast<std::size_t>(params.num_bins());
  if (mcep_with_energy.empty() || mcep_with_energy.size() > n_bins)
    throw Error("filter_spectrum: expected 1.." + std::to_string(n_bins) +
                " coefficients, got " + std::to_string(mcep_with_energy.size()));
  std::vector<double> padded(n_bins, 0.0);
  std::copy(mcep_with_energy.begin(), mcep_with_energy.end(), padded.begin());
  const std::vector<double> cep = warp_cepstrum(padded, params.warp_alpha);
  const std::vector<double> full = mirror_full_spectrum(cep, params.fft_size);
  std::copy(full.begin(), full.end(), fft.time().begin());
  fft.forward();
  for (std::size_t k = 0; k < n_bins; ++k) out[k] = fft.freq()[k].real();
}

}  // namespace

int harmonic_spacing(double f0, const AnalysisParams& params) {
  const double k0 = std::floor(f0 / params.sample_rate * params.fft_size + 0.5);
  return std::max(1, static_cast<int>(k0));
}

SpectrumFrame excitation_spectrum(double f0, const AnalysisParams& params) {
  if (!(f0 >= 0.0) || !std::isfinite(f0))
    throw Error("excitation_spectrum: f0 must be finite and >= 0, got " + std::to_string(f0));
  const int n_bins = params.num_bins();
  if (f0 == 0.0) return {std::vector<double>(static_cast<std::size_t>(n_bins), 1.0)};
  SpectrumFrame e{std::vector<double>(static_cast<std::size_t>(n_bins), 0.0)};
  const int k0 = harmonic_spacing(f0, params);
  for (int k = k0; k <= n_bins - 1; k += k0) e.bins[static_cast<std::size_t>(k)] = 1.0;
  return e;
}

std::vector<double> warp_cepstrum(std::span<const double> m, double alpha) {
  if (!(std::abs(alpha) < 1.0)) throw Error("warp_cepstrum: |alpha| must be < 1");
  const std::size_t len = m.size();
  std::vector<double> prev(len, 0.0);
  std::vector<double> cur(len, 0.0);
  if (len == 0) return cur;
  const double beta = 1.0 - alpha * alpha;
  for (std::size_t i = len; i-- > 0;) {
    cur[0] = m[i] - alpha * prev[0];
    if (len > 1) cur[1] = beta * prev[0] - alpha * prev[1];
    for (std::size_t k = 2; k < len; ++k) cur[k] = prev[k - 1] - alpha * (prev[k] - cur[k - 1]);
    std::swap(prev, cur);
  }
  return prev;
}

SpectrumFrame filter_spectrum(std::span<const double> mcep_with_energy,
                              const AnalysisParams& params) {
  params.validate();
  RealFft fft(params.fft_size);
  SpectrumFrame v{std::vector<double>(static_cast<std::size_t>(params.num_bins()))};
  log_filter_spectrum(mcep_with_energy, params, fft, v.bins);
  for (double& b : v.bins) b = std::exp(b);
  return v;
}

SpectrumFrame combine_source_filter(const SpectrumFrame& e, const SpectrumFrame& v) {
  if (e.bins.size() != v.bins.size())
    throw Error("combine_source_filter: length mismatch (" + std::to_string(e.bins.size()) +
                " vs " + std::to_string(v.bins.size()) + ")");
  SpectrumFrame s{std::vector<double>(e.bins.size())};
  for (std::size_t k = 0; k < s.bins.size(); ++k) s.bins[k] = e.bins[k] * v.bins[k];
  return s;
}

std::vector<double> zero_phase_window(const AnalysisParams& params) {
  params.validate();
  const std::vector<double> w = hann_window(params.frame_len);
  const int fn = params.fft_size;
  const int half = params.frame_len / 2;
  std::vector<double> z(static_cast<std::size_t>(fn), 0.0);
  for (int j = 0; j < params.frame_len; ++j)
    z[static_cast<std::size_t>(((j - half) % fn + fn) % fn)] = w[static_cast<std::size_t>(j)];
  return z;
}

double WindowSpectrum::at_offset(int bin_offset) const {
  const int idx = ((bin_offset + fft_size / 2) % fft_size + fft_size) % fft_size;
  return centered[static_cast<std::size_t>(idx)];
}

WindowSpectrum window_spectrum(const AnalysisParams& params) {
  const std::vector<double> z = zero_phase_window(params);
  RealFft fft(params.fft_size);
  std::copy(z.begin(), z.end(), fft.time().begin());
  fft.forward();
  std::vector<double> half(static_cast<std::size_t>(params.num_bins()));
  for (std::size_t k = 0; k < half.size(); ++k) half[k] = fft.freq()[k].real();
  const std::vector<double> full = mirror_full_spectrum(half, params.fft_size);
  const auto fn = static_cast<std::size_t>(params.fft_size);
  WindowSpectrum ws{std::vector<double>(fn), params.fft_size};
  for (std::size_t i = 0; i < fn; ++i) ws.centered[i] = full[(i + fn / 2) % fn];
  return ws;
}

AlasRecovery::AlasRecovery(const AnalysisParams& params)
    : params_(params), zero_phase_(zero_phase_window(params)), fft_(params.fft_size) {}

std::vector<double> AlasRecovery::from_spectrum(const SpectrumFrame& s) {
  const auto n_bins = static_cast<std::size_t>(params_.num_bins());
  if (s.bins.size() != n_bins)
    throw Error("recover_alas_frame: spectrum has " + std::to_string(s.bins.size()) +
                " bins, expected " + std::to_string(n_bins));
  // S (*) W == DFT(IDFT_unnormalized(S) .* z) for the zero-phase window z.
  for (std::size_t k = 0; k < n_bins; ++k) fft_.freq()[k] = s.bins[k];
  fft_.inverse();
  auto t = fft_.time();
  for (std::size_t j = 0; j < t.size(); ++j) t[j] *= zero_phase_[j];
  fft_.forward();
  const double log_floor = std::log(params_.log_floor);
  std::vector<double> out(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    const double mag = std::abs(fft_.freq()[k]);
    out[k] = mag > params_.log_floor ? std::log(mag) : log_floor;
  }
  return out;
}

std::vector<double> AlasRecovery::frame(const AcousticFrame& frame) {
  const auto n_bins = static_cast<std::size_t>(params_.num_bins());
  const SpectrumFrame e = excitation_spectrum(frame.voiced ? frame.f0 : 0.0, params_);
  SpectrumFrame v{std::vector<double>(n_bins)};
  log_filter_spectrum(cepstrum_of(frame), params_, fft_, v.bins);
  for (double& b : v.bins) b = std::exp(b);
  return from_spectrum(combine_source_filter(e, v));
}

std::vector<double> recover_alas_frame(const AcousticFrame& frame, const AnalysisParams& params) {
  AlasRecovery rec(params);
  return rec.frame(frame);
}

LasMatrix recover_alas(const FeatureTrack& track, const AnalysisParams& params) {
  params.validate();
  if (track.frames.empty()) throw Error("recover_alas: empty feature track");
  if (track.sample_rate != params.sample_rate)
    throw Error("recover_alas: track sample rate " + std::to_string(track.sample_rate) +
                " does not match analysis sample rate " + std::to_string(params.sample_rate));
  if (track.frame_shift != params.frame_shift)
    throw Error("recover_alas: track frame shift " + std::to_string(track.frame_shift) +
                " does not match analysis frame shift " + std::to_string(params.frame_shift));

  const int n_frames = static_cast<int>(track.frames.size());
  LasMatrix out(track.frames.size(), static_cast<std::size_t>(params.num_bins()));
  // Exceptions must not escape the parallel region.
  std::string failure;
  int failed_frame = n_frames;
#pragma omp parallel
  {
    AlasRecovery rec(params);
#pragma omp for schedule(static)
    for (int n = 0; n < n_frames; ++n) {
      try {
        const auto row = rec.frame(track.frames[static_cast<std::size_t>(n)]);
        std::copy(row.begin(), row.end(), out.row(static_cast<std::size_t>(n)).begin());
      } catch (const std::exception& ex) {
#pragma omp critical(alas_recover_failure)
        {
          if (n < failed_frame) {
            failed_frame = n;
            failure = "frame " + std::to_string(n) + ": " + ex.what();
          }
        }
      }
    }
  }
  if (!failure.empty()) throw Error("recover_alas: " + failure);
  return out;
}

std::vector<double> cepstrum_of(const AcousticFrame& frame) {
  std::vector<double> c;
  c.reserve(frame.mcep.size() + 1);
  c.push_back(frame.energy);
  c.insert(c.end(), frame.mcep.begin(), frame.mcep.end());
  return c;
}

}  // namespace alas
