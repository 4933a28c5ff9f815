// Serial reference kernels vs the OpenMP/FFT kernels on a synthetic corpus.
//   alas_bench [--seconds S] [--reps R]

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include <CLI11.hpp>

#include "alas/dsp.hpp"
#include "alas/features.hpp"
#include "alas/recovery.hpp"
#include "alas/reference.hpp"
#include "alas/refine.hpp"
#include "alas/synthetic.hpp"

using namespace alas;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

// Largest amplitude difference relative to the row peak, so deep spectral
// nulls (noise in the log domain) don't dominate.
double max_rel_amp_diff(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (std::size_t n = 0; n < a.rows(); ++n) {
    double peak = 0.0;
    for (double v : b.row(n)) peak = std::max(peak, std::exp(v));
    for (std::size_t k = 0; k < a.cols(); ++k)
      worst = std::max(worst, std::abs(std::exp(a(n, k)) - std::exp(b(n, k))) / peak);
  }
  return worst;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

void report(const char* kernel, double serial, double parallel, double diff) {
  std::printf("%-14s %10.4f %10.4f %8.1fx %12.3e\n", kernel, serial, parallel, serial / parallel, diff);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reference vs parallel kernel timings"};
  double seconds = 2.0;
  int reps = 3;
  app.add_option("--seconds", seconds, "Length of the synthetic utterance")->capture_default_str();
  app.add_option("--reps", reps, "Repetitions (best time is reported)")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const AnalysisParams p;
  const auto u = synthetic::vowel({.duration_s = seconds, .f0_start_hz = 120, .f0_end_hz = 240,
                                   .vibrato_hz = 5, .vibrato_depth_hz = 6});
  const LasMatrix las = extract_las(u.wave, p);
  const FeatureTrack track = extract_features(u.wave, las, p);
  const LasMatrix alas = recover_alas(track, p);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> g(0.8, 1.2), b(-1.0, 1.0);
  RefinerModel model = RefinerModel::identity(las.cols(), 2);
  for (std::size_t k = 0; k < model.num_bins(); ++k) {
    model.gain[k] = g(rng);
    model.bias[k] = b(rng);
  }

  std::printf("%zu frames, %d OpenMP threads, best of %d\n", las.rows(), omp_get_max_threads(), reps);
  std::printf("%-14s %10s %10s %9s %12s\n", "kernel", "serial s", "parallel s", "speedup", "max diff");

  LasMatrix s_las, p_las;
  const double t_ls = best_of(reps, [&] { s_las = reference::extract_las(u.wave, p); });
  const double t_lp = best_of(reps, [&] { p_las = extract_las(u.wave, p); });
  report("extract_las", t_ls, t_lp, max_rel_amp_diff(p_las, s_las));

  LasMatrix s_alas, p_alas;
  const double t_rs = best_of(reps, [&] { s_alas = reference::recover_alas(track, p); });
  const double t_rp = best_of(reps, [&] { p_alas = recover_alas(track, p); });
  report("recover_alas", t_rs, t_rp, max_rel_amp_diff(p_alas, s_alas));

  LasMatrix s_ref, p_ref;
  const double t_as = best_of(reps, [&] { s_ref = reference::apply_refiner(model.gain, model.bias, 2, alas); });
  const double t_ap = best_of(reps, [&] { p_ref = apply_refiner(model, alas); });
  report("apply_refiner", t_as, t_ap, max_abs_diff(p_ref, s_ref));
  return 0;
}
