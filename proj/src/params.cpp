#include "alas/params.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "alas/error.hpp"

namespace alas {

void warn(const std::string& msg) { std::cerr << "WARNING: " << msg << '\n'; }

void AnalysisParams::validate() const {
  if (sample_rate <= 0) throw Error("sample_rate must be positive");
  if (frame_len < 2) throw Error("frame_len must be >= 2");
  if (frame_shift < 1 || frame_shift > frame_len)
    throw Error("frame_shift must be in [1, frame_len]");
  if (fft_size < 2 || (fft_size & (fft_size - 1)) != 0)
    throw Error("fft_size must be a power of two");
  if (fft_size < frame_len) throw Error("fft_size must be >= frame_len");
  if (!(warp_alpha >= 0.0 && warp_alpha < 1.0)) throw Error("warp_alpha must be in [0, 1)");
  if (!(log_floor > 0.0) || !std::isfinite(log_floor)) throw Error("log_floor must be positive");
}

}  // namespace alas
