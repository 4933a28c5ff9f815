#include "alas/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alas/dsp.hpp"
#include "alas/error.hpp"
#include "alas/fft.hpp"
#include "alas/recovery.hpp"

namespace alas {

namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

PitchMark pitch_of_frame(const std::vector<double>& padded, std::size_t start, std::size_t len,
                         int min_lag, int max_lag, double sample_rate,
                         const PitchConfig& config) {
  const double* x = padded.data() + start;
  const double energy = dot(x, x, len);
  if (std::sqrt(energy / static_cast<double>(len)) < config.min_rms) return {};

  std::vector<double> r(static_cast<std::size_t>(max_lag - min_lag + 1), 0.0);
  double best = -1.0;
  for (int lag = min_lag; lag <= max_lag; ++lag) {
    const double* y = x + lag;
    const double denom = std::sqrt(energy * dot(y, y, len));
    const double v = denom > 0.0 ? dot(x, y, len) / denom : 0.0;
    r[static_cast<std::size_t>(lag - min_lag)] = v;
    best = std::max(best, v);
  }
  if (best < config.voicing_threshold) return {};

  const std::size_t n = r.size();
  std::size_t pick = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || r[i] >= r[i - 1];
    const bool right_ok = i + 1 == n || r[i] >= r[i + 1];
    if (left_ok && right_ok && r[i] >= 0.9 * best) {
      pick = i;
      break;
    }
  }
  double lag = static_cast<double>(pick) + min_lag;
  if (pick > 0 && pick + 1 < n) {
    const double curvature = r[pick - 1] - 2.0 * r[pick] + r[pick + 1];
    if (curvature < 0.0) lag += 0.5 * (r[pick - 1] - r[pick + 1]) / curvature;
  }
  const double f0 = std::clamp(sample_rate / lag, config.min_f0, config.max_f0);
  return {f0, true};
}

}  // namespace

std::vector<PitchMark> estimate_f0(const Waveform& wave, const AnalysisParams& params,
                                   const PitchConfig& config) {
  params.validate();
  if (wave.samples.empty()) throw Error("empty input");
  if (!(config.min_f0 > 0.0 && config.max_f0 > config.min_f0))
    throw Error("estimate_f0: invalid f0 search range");
  const int min_lag = std::max(1, static_cast<int>(std::ceil(params.sample_rate / config.max_f0)));
  const int max_lag = static_cast<int>(std::floor(params.sample_rate / config.min_f0));
  const auto len = static_cast<std::size_t>(params.frame_len);
  const std::size_t n_frames = num_frames(wave.samples.size(), params);
  const auto shift = static_cast<std::size_t>(params.frame_shift);

  std::vector<double> padded(n_frames * shift + len + static_cast<std::size_t>(max_lag), 0.0);
  std::copy(wave.samples.begin(), wave.samples.end(), padded.begin());

  std::vector<PitchMark> marks(n_frames);
  const int count = static_cast<int>(n_frames);
#pragma omp parallel for schedule(static)
  for (int n = 0; n < count; ++n) {
    const auto i = static_cast<std::size_t>(n);
    marks[i] = pitch_of_frame(padded, i * shift, len, min_lag, max_lag,
                              static_cast<double>(params.sample_rate), config);
  }
  return marks;
}

std::vector<double> mcep_analysis(std::span<const double> las_frame, const AnalysisParams& params,
                                  int order) {
  params.validate();
  const int n_bins = params.num_bins();
  if (las_frame.size() != static_cast<std::size_t>(n_bins))
    throw Error("mcep_analysis: expected " + std::to_string(n_bins) + " bins, got " +
                std::to_string(las_frame.size()));
  if (order < 1 || order + 1 > n_bins)
    throw Error("mcep_analysis: order must be in [1, " + std::to_string(n_bins - 1) + "]");

  RealFft fft(params.fft_size);
  for (std::size_t k = 0; k < las_frame.size(); ++k) fft.freq()[k] = las_frame[k];
  fft.inverse();
  const double scale = 1.0 / params.fft_size;
  std::vector<double> cep(static_cast<std::size_t>(n_bins));
  for (std::size_t k = 0; k < cep.size(); ++k) cep[k] = fft.time()[k] * scale;

  std::vector<double> mcep = warp_cepstrum(cep, -params.warp_alpha);
  mcep.resize(static_cast<std::size_t>(order + 1));
  return mcep;
}

FeatureTrack extract_features(const Waveform& wave, const AnalysisParams& params, int order) {
  return extract_features(wave, extract_las(wave, params), params, order);
}

FeatureTrack extract_features(const Waveform& wave, const LasMatrix& las,
                              const AnalysisParams& params, int order) {
  const std::vector<PitchMark> pitch = estimate_f0(wave, params);
  if (pitch.size() != las.rows())
    throw Error("extract_features: LAS has " + std::to_string(las.rows()) + " frames, expected " +
                std::to_string(pitch.size()));
  FeatureTrack track;
  track.frame_shift = params.frame_shift;
  track.sample_rate = params.sample_rate;
  track.frames.resize(pitch.size());

  const int count = static_cast<int>(pitch.size());
  std::string failure;
#pragma omp parallel for schedule(static)
  for (int n = 0; n < count; ++n) {
    const auto i = static_cast<std::size_t>(n);
    try {
      const std::vector<double> c = mcep_analysis(las.row(i), params, order);
      AcousticFrame& f = track.frames[i];
      f.f0 = pitch[i].voiced ? pitch[i].f0 : 0.0;
      f.voiced = pitch[i].voiced;
      f.energy = c[0];
      f.mcep.assign(c.begin() + 1, c.end());
    } catch (const std::exception& ex) {
#pragma omp critical(alas_features_failure)
      if (failure.empty()) failure = ex.what();
    }
  }
  if (!failure.empty()) throw Error(failure);
  return track;
}

}  // namespace alas
