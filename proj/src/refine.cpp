#include "alas/refine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alas/error.hpp"
#include "binary_io.hpp"

namespace alas {

namespace {

constexpr std::uint32_t kModelVersion = 1;
constexpr double kDegenerateVariance = 1e-12;

}  // namespace

RefinerModel RefinerModel::identity(std::size_t num_bins, int context_radius) {
  return {std::vector<double>(num_bins, 1.0), std::vector<double>(num_bins, 0.0),
          context_radius};
}

RefinerModel fit_refiner(const std::vector<TrainingPair>& pairs, int context_radius) {
  if (pairs.empty()) throw Error("fit_refiner: no training pairs");
  if (context_radius < 0) throw Error("fit_refiner: context_radius must be >= 0");
  const std::size_t n_bins = pairs.front().alas.cols();
  std::size_t total = 0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& [alas, las] = pairs[p];
    if (alas.rows() != las.rows() || alas.cols() != las.cols())
      throw Error("fit_refiner: pair " + std::to_string(p) + " has mismatched shapes (" +
                  std::to_string(alas.rows()) + "x" + std::to_string(alas.cols()) + " vs " +
                  std::to_string(las.rows()) + "x" + std::to_string(las.cols()) + ")");
    if (alas.cols() != n_bins)
      throw Error("fit_refiner: pair " + std::to_string(p) + " has " +
                  std::to_string(alas.cols()) + " bins, expected " + std::to_string(n_bins));
    total += alas.rows();
  }
  if (total == 0 || n_bins == 0) throw Error("fit_refiner: training pairs are empty");

  RefinerModel model = RefinerModel::identity(n_bins, context_radius);
  const int bins = static_cast<int>(n_bins);
  const double count = static_cast<double>(total);

#pragma omp parallel for schedule(static)
  for (int kb = 0; kb < bins; ++kb) {
    const auto k = static_cast<std::size_t>(kb);
    double sum_x = 0.0;
    double sum_y = 0.0;
    for (const auto& [alas, las] : pairs)
      for (std::size_t n = 0; n < alas.rows(); ++n) {
        sum_x += alas(n, k);
        sum_y += las(n, k);
      }
    const double mean_x = sum_x / count;
    const double mean_y = sum_y / count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [alas, las] : pairs)
      for (std::size_t n = 0; n < alas.rows(); ++n) {
        const double dx = alas(n, k) - mean_x;
        sxx += dx * dx;
        sxy += dx * (las(n, k) - mean_y);
      }
    if (sxx / count < kDegenerateVariance) {
      model.gain[k] = 1.0;
      model.bias[k] = mean_y - mean_x;
    } else {
      model.gain[k] = sxy / sxx;
      model.bias[k] = mean_y - model.gain[k] * mean_x;
    }
  }
  return model;
}

LasMatrix apply_refiner(const RefinerModel& model, const LasMatrix& alas) {
  const std::size_t n_bins = model.num_bins();
  if (model.bias.size() != n_bins) throw Error("apply_refiner: model gain/bias length mismatch");
  if (alas.cols() != n_bins)
    throw Error("apply_refiner: input has " + std::to_string(alas.cols()) +
                " bins, model expects " + std::to_string(n_bins));
  if (model.context_radius < 0) throw Error("apply_refiner: negative context radius");

  const int n_frames = static_cast<int>(alas.rows());
  LasMatrix affine(alas.rows(), n_bins);
#pragma omp parallel for schedule(static)
  for (int nf = 0; nf < n_frames; ++nf) {
    const auto n = static_cast<std::size_t>(nf);
    const auto in = alas.row(n);
    auto out = affine.row(n);
    for (std::size_t k = 0; k < n_bins; ++k) out[k] = model.gain[k] * in[k] + model.bias[k];
  }
  if (model.context_radius == 0) return affine;

  const int radius = model.context_radius;
  LasMatrix smoothed(alas.rows(), n_bins);
#pragma omp parallel for schedule(static)
  for (int nf = 0; nf < n_frames; ++nf) {
    const int lo = std::max(0, nf - radius);
    const int hi = std::min(n_frames - 1, nf + radius);
    auto out = smoothed.row(static_cast<std::size_t>(nf));
    for (int m = lo; m <= hi; ++m) {
      const auto src = affine.row(static_cast<std::size_t>(m));
      for (std::size_t k = 0; k < n_bins; ++k) out[k] += src[k];
    }
    const double inv = 1.0 / (hi - lo + 1);
    for (double& v : out) v *= inv;
  }
  return smoothed;
}

void save_refiner(const RefinerModel& model, const std::filesystem::path& path) {
  if (model.bias.size() != model.gain.size()) throw Error("save_refiner: gain/bias length mismatch");
  if (model.context_radius < 0) throw Error("save_refiner: negative context radius");
  detail::ByteWriter w;
  w.magic("ALRF");
  w.u32(kModelVersion);
  w.u32(static_cast<std::uint32_t>(model.num_bins()));
  w.u32(static_cast<std::uint32_t>(model.context_radius));
  for (double g : model.gain) w.f64(g);
  for (double b : model.bias) w.f64(b);
  detail::write_file(path, w.bytes());
}

RefinerModel load_refiner(const std::filesystem::path& path) {
  detail::ByteReader r(detail::read_file(path), path.string());
  r.expect_magic("ALRF");
  const std::uint32_t version = r.u32("version");
  if (version != kModelVersion)
    throw FormatError(path.string() + ": unsupported ALRF version " + std::to_string(version));
  const std::uint32_t n_bins = r.u32("bin count");
  const std::uint32_t radius = r.u32("context radius");
  if (r.remaining() != static_cast<std::size_t>(n_bins) * 16)
    throw FormatError(path.string() + ": payload size does not match " + std::to_string(n_bins) +
                      " bins");
  if (radius > 1u << 20) throw FormatError(path.string() + ": implausible context radius");
  RefinerModel model;
  model.context_radius = static_cast<int>(radius);
  model.gain.resize(n_bins);
  model.bias.resize(n_bins);
  for (double& g : model.gain) g = r.f64("gain");
  for (double& b : model.bias) b = r.f64("bias");
  for (std::size_t k = 0; k < n_bins; ++k)
    if (!std::isfinite(model.gain[k]) || !std::isfinite(model.bias[k]))
      throw FormatError(path.string() + ": non-finite parameter at bin " + std::to_string(k));
  return model;
}

}  // namespace alas
