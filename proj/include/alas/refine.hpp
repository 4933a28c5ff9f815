#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "alas/types.hpp"

namespace alas {

/// Per-bin affine map from ALAS to LAS, optionally followed by a moving
/// average over +-context_radius frames.
struct RefinerModel {
  std::vector<double> gain;
  std::vector<double> bias;
  int context_radius = 0;

  std::size_t num_bins() const { return gain.size(); }

  static RefinerModel identity(std::size_t num_bins, int context_radius = 0);
};

struct TrainingPair {
  LasMatrix alas;
  LasMatrix las;
};

/// Ordinary least squares of LAS[:, k] on ALAS[:, k] over every frame of
/// every pair, independently per bin. Bins whose ALAS variance is below
/// 1e-12 get gain 1 and bias mean(LAS - ALAS).
RefinerModel fit_refiner(const std::vector<TrainingPair>& pairs, int context_radius = 0);

/// gain_k * alas[n, k] + bias_k, then the moving average over the frames
/// n - r .. n + r that exist.
LasMatrix apply_refiner(const RefinerModel& model, const LasMatrix& alas);

/// ALRF v1: "ALRF", u32 version, u32 K, u32 context_radius, K f64 gains,
/// K f64 biases; little-endian.
void save_refiner(const RefinerModel& model, const std::filesystem::path& path);
RefinerModel load_refiner(const std::filesystem::path& path);

}  // namespace alas
