#include "alas/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "alas/error.hpp"

namespace alas {

namespace {

std::size_t common_frames(const FeatureTrack& ref, const FeatureTrack& test, const char* metric) {
  if (ref.frames.empty() || test.frames.empty())
    throw Error(std::string(metric) + ": empty feature track");
  if (ref.frames.size() != test.frames.size())
    warn(std::string(metric) + ": frame counts differ (" + std::to_string(ref.frames.size()) +
         " vs " + std::to_string(test.frames.size()) + "), truncating to the shorter");
  return std::min(ref.frames.size(), test.frames.size());
}

bool both_voiced(const AcousticFrame& a, const AcousticFrame& b) {
  return a.voiced && b.voiced && a.f0 > 0.0 && b.f0 > 0.0;
}

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

template <typename Emit>
void for_each_metric(const EvalReport& r, Emit emit) {
  if (r.snr_db) emit("snr_db", *r.snr_db);
  if (r.las_rmse_db) emit("las_rmse_db", *r.las_rmse_db);
  if (r.mcd_v_db) emit("mcd_v_db", *r.mcd_v_db);
  if (r.f0_rmse_cent) emit("f0_rmse_cent", *r.f0_rmse_cent);
  if (r.vuv_error_pct) emit("vuv_error_pct", *r.vuv_error_pct);
  emit("frames_compared", static_cast<double>(r.frames_compared));
}

}  // namespace

double snr_db(const Waveform& ref, const Waveform& test) {
  if (ref.sample_rate != test.sample_rate)
    throw Error("snr_db: sample rates differ (" + std::to_string(ref.sample_rate) + " vs " +
                std::to_string(test.sample_rate) + ")");
  const std::size_t n = std::min(ref.samples.size(), test.samples.size());
  double signal = 0.0;
  double noise = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = ref.samples[i] - test.samples[i];
    signal += ref.samples[i] * ref.samples[i];
    noise += d * d;
  }
  if (signal == 0.0) throw Error("snr_db: reference has zero energy");
  if (noise == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal / noise);
}

double las_rmse_db(const LasMatrix& ref, const LasMatrix& test) {
  if (ref.rows() != test.rows() || ref.cols() != test.cols())
    throw Error("las_rmse_db: shape mismatch (" + std::to_string(ref.rows()) + "x" +
                std::to_string(ref.cols()) + " vs " + std::to_string(test.rows()) + "x" +
                std::to_string(test.cols()) + ")");
  if (ref.empty()) throw Error("las_rmse_db: empty matrices");
  constexpr double to_db = 20.0 / std::numbers::ln10;
  const auto a = ref.data();
  const auto b = test.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = to_db * a[i] - to_db * b[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(a.size()));
}

double mcd_v_db(const FeatureTrack& ref, const FeatureTrack& test) {
  const std::size_t n = common_frames(ref, test, "mcd_v_db");
  constexpr double scale = 10.0 / std::numbers::ln10;
  double total = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const AcousticFrame& a = ref.frames[i];
    const AcousticFrame& b = test.frames[i];
    if (!both_voiced(a, b)) continue;
    if (a.mcep.size() != b.mcep.size())
      throw Error("mcd_v_db: mel-cepstrum orders differ at frame " + std::to_string(i));
    double sq = 0.0;
    for (std::size_t d = 0; d < a.mcep.size(); ++d) {
      const double diff = a.mcep[d] - b.mcep[d];
      sq += diff * diff;
    }
    total += scale * std::sqrt(2.0 * sq);
    ++used;
  }
  if (used == 0) throw Error("mcd_v_db: no commonly voiced frames");
  return total / static_cast<double>(used);
}

double f0_rmse_cent(const FeatureTrack& ref, const FeatureTrack& test) {
  const std::size_t n = common_frames(ref, test, "f0_rmse_cent");
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const AcousticFrame& a = ref.frames[i];
    const AcousticFrame& b = test.frames[i];
    if (!both_voiced(a, b)) continue;
    const double cents = 1200.0 * std::log2(b.f0 / a.f0);
    sum += cents * cents;
    ++used;
  }
  if (used == 0) throw Error("f0_rmse_cent: no commonly voiced frames");
  return std::sqrt(sum / static_cast<double>(used));
}

double vuv_error_pct(const FeatureTrack& ref, const FeatureTrack& test) {
  const std::size_t n = common_frames(ref, test, "vuv_error_pct");
  std::size_t mismatched = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (ref.frames[i].voiced != test.frames[i].voiced) ++mismatched;
  return 100.0 * static_cast<double>(mismatched) / static_cast<double>(n);
}

EvalReport evaluate_features(const FeatureTrack& ref, const FeatureTrack& test) {
  EvalReport report;
  report.vuv_error_pct = vuv_error_pct(ref, test);
  report.frames_compared = std::min(ref.frames.size(), test.frames.size());
  bool any_voiced = false;
  for (std::size_t i = 0; i < report.frames_compared; ++i)
    any_voiced = any_voiced || both_voiced(ref.frames[i], test.frames[i]);
  if (any_voiced) {
    report.mcd_v_db = mcd_v_db(ref, test);
    report.f0_rmse_cent = f0_rmse_cent(ref, test);
  }
  return report;
}

std::string format_report_text(const EvalReport& report) {
  std::string out;
  for_each_metric(report, [&](const char* key, double v) {
    out += key;
    out += " = ";
    out += std::string(key) == "frames_compared" ? std::to_string(report.frames_compared)
                                                 : format_value(v);
    out += '\n';
  });
  return out;
}

std::string format_report_lines(const EvalReport& report) {
  std::string out;
  for_each_metric(report, [&](const char* key, double v) {
    out += key;
    out += '\t';
    out += std::string(key) == "frames_compared" ? std::to_string(report.frames_compared)
                                                 : format_value(v);
    out += '\n';
  });
  return out;
}

}  // namespace alas
