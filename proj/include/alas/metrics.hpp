#pragma once

#include <optional>
#include <string>

#include "alas/types.hpp"

namespace alas {

/// Objective scores. Metrics not computed for a given comparison are empty.
/// An SNR of +infinity means the signals were identical.
struct EvalReport {
  std::optional<double> snr_db;
  std::optional<double> las_rmse_db;
  std::optional<double> mcd_v_db;
  std::optional<double> f0_rmse_cent;
  std::optional<double> vuv_error_pct;
  std::size_t frames_compared = 0;
};

/// 10 log10(sum ref^2 / sum (ref - test)^2) over the common prefix.
double snr_db(const Waveform& ref, const Waveform& test);

/// RMSE over all entries of the two spectra, each scaled to dB
/// (20 / ln 10 times the natural-log values).
double las_rmse_db(const LasMatrix& ref, const LasMatrix& test);

/// Mean over frames voiced in both tracks of
/// (10 / ln 10) sqrt(2 sum_d (ref_d - test_d)^2), d over the mel-cepstra
/// (energy excluded). Tracks of different lengths are truncated with a
/// warning.
double mcd_v_db(const FeatureTrack& ref, const FeatureTrack& test);

/// RMSE of 1200 log2(f_test / f_ref) over frames voiced in both tracks.
double f0_rmse_cent(const FeatureTrack& ref, const FeatureTrack& test);

/// Percentage of frames whose V/UV flags differ.
double vuv_error_pct(const FeatureTrack& ref, const FeatureTrack& test);

/// MCD-V, F0-RMSE and V/UV error. MCD-V and F0-RMSE are left empty when no
/// frame is voiced in both tracks.
EvalReport evaluate_features(const FeatureTrack& ref, const FeatureTrack& test);

/// "key = value" lines, one per present metric.
std::string format_report_text(const EvalReport& report);
/// "metric<TAB>value" lines, one per present metric.
std::string format_report_lines(const EvalReport& report);

}  // namespace alas
