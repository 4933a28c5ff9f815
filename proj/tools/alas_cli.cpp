// alas: command-line front end for the approximate-LAS pipeline.
//
//   alas analyze in.wav -o out.aftk [--las natural.lask]
//   alas recover in.aftk -o out.lask
//   alas refine-fit pairs.tsv -o model.alrf [--context-radius R]
//   alas refine-apply model.alrf in.lask -o out.lask
//   alas evaluate --ref A --test B (--wav|--las|--feat) -o report.txt
//   alas resynth in.lask -o out.wav [--iters N]
//   alas plot in.lask -o out.pgm
//
// Exit status: 0 on success, 1 on usage errors, 2 on data/format errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "alas/dsp.hpp"
#include "alas/error.hpp"
#include "alas/features.hpp"
#include "alas/io.hpp"
#include "alas/metrics.hpp"
#include "alas/params.hpp"
#include "alas/recovery.hpp"
#include "alas/refine.hpp"

namespace {

using alas::AnalysisParams;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check_geometry(const alas::FrameGeometry& geom, const AnalysisParams& params,
                    const std::string& source) {
  if (geom.sample_rate != params.sample_rate)
    throw alas::Error(source + ": sample rate " + std::to_string(geom.sample_rate) +
                      " does not match --sample-rate " + std::to_string(params.sample_rate));
  if (geom.frame_shift != params.frame_shift)
    throw alas::Error(source + ": frame shift " + std::to_string(geom.frame_shift) +
                      " does not match --frame-shift " + std::to_string(params.frame_shift));
}

void check_bins(const alas::LasMatrix& las, const AnalysisParams& params,
                const std::string& source) {
  if (las.cols() != static_cast<std::size_t>(params.num_bins()))
    throw alas::Error(source + ": " + std::to_string(las.cols()) + " bins, but --fft-size " +
                      std::to_string(params.fft_size) + " implies " +
                      std::to_string(params.num_bins()));
}

alas::FrameGeometry geometry_of(const AnalysisParams& params) {
  return {params.frame_shift, params.sample_rate};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw alas::FormatError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw alas::FormatError("write failed: " + path);
}

void run_analyze(const AnalysisParams& params, const std::string& in, const std::string& out,
                 const std::string& las_out) {
  const alas::Waveform wave = alas::read_wav(in);
  if (wave.sample_rate != params.sample_rate)
    throw alas::Error(in + ": sample rate " + std::to_string(wave.sample_rate) +
                      " does not match --sample-rate " + std::to_string(params.sample_rate));
  const alas::LasMatrix las = alas::extract_las(wave, params);
  alas::write_features(out, alas::extract_features(wave, las, params));
  if (!las_out.empty()) alas::write_las(las_out, las, geometry_of(params));
}

void run_recover(const AnalysisParams& params, const std::string& in, const std::string& out) {
  const alas::FeatureTrack track = alas::read_features(in);
  check_geometry({track.frame_shift, track.sample_rate}, params, in);
  alas::write_las(out, alas::recover_alas(track, params), geometry_of(params));
}

void run_refine_fit(const AnalysisParams& params, const std::string& manifest,
                    const std::string& out, int context_radius) {
  const auto entries = alas::read_pair_manifest(manifest);
  std::vector<alas::TrainingPair> pairs(entries.size());
  const int count = static_cast<int>(entries.size());
  std::string failure;
  int failed_entry = count;
  // Files load concurrently; the pair order follows the manifest.
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      const auto& [alas_path, las_path] = entries[idx];
      alas::LasFile a = alas::read_las(alas_path);
      alas::LasFile b = alas::read_las(las_path);
      check_geometry(a.geometry, params, alas_path.string());
      check_geometry(b.geometry, params, las_path.string());
      check_bins(a.las, params, alas_path.string());
      check_bins(b.las, params, las_path.string());
      if (a.las.rows() != b.las.rows())
        throw alas::Error(alas_path.string() + " and " + las_path.string() +
                          " have different frame counts");
      pairs[idx] = {std::move(a.las), std::move(b.las)};
    } catch (const std::exception& ex) {
#pragma omp critical(alas_cli_manifest)
      {
        if (i < failed_entry) {
          failed_entry = i;
          failure = ex.what();
        }
      }
    }
  }
  if (!failure.empty()) throw alas::Error(failure);
  alas::save_refiner(alas::fit_refiner(pairs, context_radius), out);
}

void run_refine_apply(const AnalysisParams& params, const std::string& model_path,
                      const std::string& in, const std::string& out) {
  const alas::RefinerModel model = alas::load_refiner(model_path);
  const alas::LasFile file = alas::read_las(in);
  check_geometry(file.geometry, params, in);
  alas::write_las(out, alas::apply_refiner(model, file.las), file.geometry);
}

alas::EvalReport evaluate_waves(const AnalysisParams& params, const std::string& ref_path,
                                const std::string& test_path) {
  const alas::Waveform ref = alas::read_wav(ref_path);
  const alas::Waveform test = alas::read_wav(test_path);
  for (const auto* w : {&ref, &test})
    if (w->sample_rate != params.sample_rate)
      throw alas::Error("waveform sample rate " + std::to_string(w->sample_rate) +
                        " does not match --sample-rate " + std::to_string(params.sample_rate));

  alas::LasMatrix ref_las = alas::extract_las(ref, params);
  alas::LasMatrix test_las = alas::extract_las(test, params);
  alas::EvalReport report =
      alas::evaluate_features(alas::extract_features(ref, ref_las, params),
                              alas::extract_features(test, test_las, params));
  report.snr_db = alas::snr_db(ref, test);

  const std::size_t rows = std::min(ref_las.rows(), test_las.rows());
  if (ref_las.rows() != test_las.rows())
    alas::warn("LAS frame counts differ, comparing the first " + std::to_string(rows));
  auto truncate = [rows](const alas::LasMatrix& m) {
    alas::LasMatrix t(rows, m.cols());
    std::copy_n(m.data().begin(), rows * m.cols(), t.data().begin());
    return t;
  };
  report.las_rmse_db = alas::las_rmse_db(truncate(ref_las), truncate(test_las));
  return report;
}

alas::EvalReport evaluate_las(const AnalysisParams& params, const std::string& ref_path,
                              const std::string& test_path) {
  const alas::LasFile ref = alas::read_las(ref_path);
  const alas::LasFile test = alas::read_las(test_path);
  check_geometry(ref.geometry, params, ref_path);
  check_geometry(test.geometry, params, test_path);
  alas::EvalReport report;
  report.las_rmse_db = alas::las_rmse_db(ref.las, test.las);
  report.frames_compared = ref.las.rows();
  return report;
}

alas::EvalReport evaluate_feats(const AnalysisParams& params, const std::string& ref_path,
                                const std::string& test_path) {
  const alas::FeatureTrack ref = alas::read_features(ref_path);
  const alas::FeatureTrack test = alas::read_features(test_path);
  check_geometry({ref.frame_shift, ref.sample_rate}, params, ref_path);
  check_geometry({test.frame_shift, test.sample_rate}, params, test_path);
  return alas::evaluate_features(ref, test);
}

void run_resynth(const AnalysisParams& params, const std::string& in, const std::string& out,
                 int iters) {
  const alas::LasFile file = alas::read_las(in);
  check_geometry(file.geometry, params, in);
  check_bins(file.las, params, in);
  alas::write_wav(out, alas::griffin_lim(file.las, params, iters).wave);
}

void run_plot(const std::string& in, const std::string& out) {
  alas::emit_spectrogram_image(alas::read_las(in).las, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate log-amplitude spectrum recovery from F0 and mel-cepstra"};
  app.require_subcommand(1);
  app.fallthrough();

  AnalysisParams params;
  app.add_option("--sample-rate", params.sample_rate, "Sample rate (Hz)")->capture_default_str();
  app.add_option("--frame-len", params.frame_len, "Frame length (samples)")->capture_default_str();
  app.add_option("--frame-shift", params.frame_shift, "Frame shift (samples)")->capture_default_str();
  app.add_option("--fft-size", params.fft_size, "FFT size (power of two)")->capture_default_str();
  app.add_option("--alpha", params.warp_alpha, "Mel warping coefficient")->capture_default_str();
  app.add_option("--log-floor", params.log_floor, "Amplitude floor before log")->capture_default_str();

  std::string in;
  std::string in2;
  std::string out;

  auto* analyze = app.add_subcommand("analyze", "Extract features (and natural LAS) from a WAV");
  std::string las_out;
  analyze->add_option("input", in, "Input WAV (PCM16 mono)")->required();
  analyze->add_option("-o,--output", out, "Output feature file (.aftk)")->required();
  analyze->add_option("--las", las_out, "Also write the natural LAS (.lask)");

  auto* recover = app.add_subcommand("recover", "Recover ALAS from a feature file");
  recover->add_option("input", in, "Input feature file (.aftk)")->required();
  recover->add_option("-o,--output", out, "Output LAS file (.lask)")->required();

  auto* refine_fit = app.add_subcommand("refine-fit", "Fit the per-bin refiner");
  int context_radius = 0;
  refine_fit->add_option("manifest", in, "Lines of \"<alas.lask>\\t<las.lask>\"")->required();
  refine_fit->add_option("-o,--output", out, "Output model (.alrf)")->required();
  refine_fit->add_option("--context-radius", context_radius, "Moving-average radius in frames")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  auto* refine_apply = app.add_subcommand("refine-apply", "Apply a refiner model to ALAS");
  refine_apply->add_option("model", in2, "Model file (.alrf)")->required();
  refine_apply->add_option("input", in, "Input LAS file (.lask)")->required();
  refine_apply->add_option("-o,--output", out, "Output LAS file (.lask)")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Objective metrics between two files");
  std::string ref_path;
  std::string test_path;
  std::string format = "text";
  evaluate->add_option("--ref", ref_path, "Reference file")->required();
  evaluate->add_option("--test", test_path, "Test file")->required();
  auto* mode_wav = evaluate->add_flag("--wav", "Inputs are WAV files");
  auto* mode_las = evaluate->add_flag("--las", "Inputs are LAS files");
  auto* mode_feat = evaluate->add_flag("--feat", "Inputs are feature files");
  mode_wav->excludes(mode_las)->excludes(mode_feat);
  mode_las->excludes(mode_feat);
  evaluate->add_option("-o,--output", out, "Report file")->required();
  evaluate->add_option("--format", format, "Report format: text (key = value) or tsv")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "tsv"}));

  auto* resynth = app.add_subcommand("resynth", "Griffin-Lim resynthesis of a LAS file");
  int iters = alas::kDefaultGriffinLimIters;
  resynth->add_option("input", in, "Input LAS file (.lask)")->required();
  resynth->add_option("-o,--output", out, "Output WAV")->required();
  resynth->add_option("--iters", iters, "Griffin-Lim iterations")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  auto* plot = app.add_subcommand("plot", "Write a LAS file as a grayscale PGM image");
  plot->add_option("input", in, "Input LAS file (.lask)")->required();
  plot->add_option("-o,--output", out, "Output image (.pgm)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    try {
      params.validate();
    } catch (const alas::Error& e) {
      throw UsageError(e.what());
    }

    if (*analyze) {
      run_analyze(params, in, out, las_out);
    } else if (*recover) {
      run_recover(params, in, out);
    } else if (*refine_fit) {
      run_refine_fit(params, in, out, context_radius);
    } else if (*refine_apply) {
      run_refine_apply(params, in2, in, out);
    } else if (*evaluate) {
      alas::EvalReport report;
      if (*mode_wav) {
        report = evaluate_waves(params, ref_path, test_path);
      } else if (*mode_las) {
        report = evaluate_las(params, ref_path, test_path);
      } else if (*mode_feat) {
        report = evaluate_feats(params, ref_path, test_path);
      } else {
        throw UsageError("evaluate: one of --wav, --las or --feat is required");
      }
      write_text(out, format == "tsv" ? alas::format_report_lines(report)
                                      : alas::format_report_text(report));
      std::cout << alas::format_report_lines(report);
    } else if (*resynth) {
      run_resynth(params, in, out, iters);
    } else if (*plot) {
      run_plot(in, out);
    }
  } catch (const UsageError& e) {
    std::cerr << "alas: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "alas: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
