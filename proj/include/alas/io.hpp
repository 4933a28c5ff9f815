#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "alas/types.hpp"

namespace alas {

// RIFF/WAVE, 16-bit PCM, mono. Samples are scaled by 1/32768; writing
// rounds and saturates to [-32768, 32767].
Waveform read_wav(const std::filesystem::path& path);
void write_wav(const std::filesystem::path& path, const Waveform& wave);

/// Geometry stored in the AFTK/LASK headers.
struct FrameGeometry {
  int frame_shift = 80;
  int sample_rate = 16000;
};

/// Number of per-frame values in an AFTK file: f0, vuv, energy, 40 mcep.
inline constexpr int kFeatureDims = 43;

// AFTK v1: "AFTK", u32 version, u32 num_frames, u32 dims (= 43),
// u32 frame_shift, u32 sample_rate, then float32 rows [f0, vuv, energy, mcep...].
void write_features(const std::filesystem::path& path, const FeatureTrack& track);
FeatureTrack read_features(const std::filesystem::path& path);

struct LasFile {
  LasMatrix las;
  FrameGeometry geometry;
};

// LASK v1: "LASK", u32 version, u32 num_frames, u32 num_bins,
// u32 frame_shift, u32 sample_rate, then float32 row-major values.
void write_las(const std::filesystem::path& path, const LasMatrix& las, FrameGeometry geometry);
LasFile read_las(const std::filesystem::path& path);

/// Binary PGM (P5): width = frames, height = bins, bin 0 on the bottom row.
/// Values are min-max normalized to 0..255; a constant matrix maps to 128.
void emit_spectrogram_image(const LasMatrix& las, const std::filesystem::path& path);

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<unsigned char> pixels;  // row-major, top row first

  unsigned char at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
};

GrayImage read_pgm(const std::filesystem::path& path);

/// Lines "<alas path><TAB><las path>". Blank lines and lines starting with
/// '#' are skipped.
std::vector<std::pair<std::filesystem::path, std::filesystem::path>> read_pair_manifest(
    const std::filesystem::path& path);

}  // namespace alas
